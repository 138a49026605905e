#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hsl/descent.hpp"
#include "hsl/grids.hpp"

namespace hsl {

struct SolverOptions {
  double tol = 1e-6;
  int max_iter = 50000;
  std::uint64_t seed = 0;
  /// Optional per-iterate hook (iteration, normalized values).
  std::function<void(int, std::span<const double>)> observer;

  DescentOptions descent() const;
};

template <class F>
struct GroundState {
  double level = 0.0;
  F minimizer;
  int iterations = 0;
  double grad_norm = 0.0;
  bool converged = false;
};

using RadialGroundState = GroundState<RadialFunction>;
using DiskGroundState = GroundState<DiskFunction>;

/// Dirichlet energy over (integral |x|^alpha |u|^{p+1})^{2/(p+1)}.
double rayleigh_scalar(const RadialFunction& u, double alpha, double p);
double rayleigh_scalar(const DiskFunction& u, double alpha, double p);

/// Euclidean gradient of the discrete quotient with respect to nodal values.
std::vector<double> rayleigh_scalar_gradient(const RadialFunction& u, double alpha, double p);
std::vector<double> rayleigh_scalar_gradient(const DiskFunction& u, double alpha, double p);

/// Radial ground level. For N >= 3 requires p + 1 below the weighted radial
/// critical exponent. Starts from 1 - r^2 unless `initial` is given.
RadialGroundState minimize_radial(int N, double p, double alpha, const RadialGrid& grid,
                                  const SolverOptions& opts = {},
                                  const std::optional<RadialFunction>& initial = std::nullopt);

enum class DiskInit { Radial, BoundaryBump, Random };

std::string to_string(DiskInit init);
DiskInit parse_disk_init(const std::string& s);

/// Ground level on the unit disk from a single starting point. Radial init
/// uses the radial minimizer on the matching radial grid.
DiskGroundState minimize_disk(double p, double alpha, const DiskGrid& grid,
                              const SolverOptions& opts, DiskInit init);

/// Best of {Radial, BoundaryBump, Random(seed), Random(seed+1)}. When the
/// radial ground state is already known it is reused as the Radial start.
DiskGroundState minimize_disk_multistart(double p, double alpha, const DiskGrid& grid,
                                         const SolverOptions& opts,
                                         const RadialGroundState* radial = nullptr);

/// Grid resolution that keeps the radial boundary layer of width about
/// N/(N+alpha) resolved by at least `cells_per_layer` cells.
int recommended_radial_cells(int N, double alpha, int base = 256, int cells_per_layer = 32);

/// Normalize sign, take absolute values, and rescale so the weighted
/// (p+1)-norm is one.
void normalize_minimizer(std::vector<double>& values, const std::vector<double>& weights,
                         double p);

struct ScanRow {
  double alpha;
  double level_rad;
  double level_full;
  double ratio;
  int iterations;
};

struct ScanResult {
  double p;
  std::vector<ScanRow> rows;
};

struct ScanOptions {
  SolverOptions solver;
  int jobs = 1;
};

/// Radial and full disk levels for each alpha (N = 2), run concurrently.
ScanResult scan_alpha(double p, const std::vector<double>& alphas, const DiskGrid& grid,
                      const ScanOptions& opts = {});

struct AlphaStarOptions {
  double delta = 0.02;      ///< symmetry breaking declared at ratio > 1 + delta
  double lo = 0.0;
  double hi = 400.0;
  double coarse_step = 25.0;
  double rel_tol = 0.01;    ///< bisection stops at bracket width rel_tol * alpha
  int m_r = 128;
  int m_t = 128;
  bool refine = true;       ///< repeat the bisection once on a doubled grid
  ScanOptions scan;
};

struct AlphaStarResult {
  double alpha_star;         ///< estimate on the finest grid used
  double alpha_star_coarse;
  double alpha_star_fine;    ///< NaN when refine = false
  double ratio_at_star;
  std::vector<ScanRow> coarse_scan;
  int evaluations = 0;
};

AlphaStarResult find_alpha_star(double p, const AlphaStarOptions& opts = {});

}  // namespace hsl
