#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "hsl/exponents.hpp"
#include "hsl/grids.hpp"

namespace hsl {

/// Least-squares line through (log alpha, log level).
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double half_width = 0.0;  ///< 95% confidence half-width of the slope
  int n_points = 0;
};

/// Requires at least 4 points with positive coordinates (NonPositiveData).
SlopeFit fit_log_slope(const std::vector<std::pair<double, double>>& points);

/// lo, lo*ratio, lo*ratio^2, ... up to hi (hi included when within rounding).
/// When that gives fewer than min_points values, returns min_points
/// log-spaced values from lo to hi instead.
std::vector<double> geometric_sweep(double lo, double hi, double ratio = 1.4142135623730951,
                                    int min_points = 8);

/// Rows of alpha,level. An optional header before the first row selects the
/// columns named alpha and level (or level_rad); '#' lines are skipped.
std::vector<std::pair<double, double>> read_alpha_level_csv(std::istream& in);

struct HenonSubstitution {
  double eps;           ///< N / (N + alpha)
  RadialFunction v;     ///< v(rho) = u(rho^eps) on the same grid
  double identity_gap;  ///< |∫|x|^alpha |u|^{p+1} - omega eps ∫|v|^{p+1} rho^{N-1} drho|
};

/// u is interpolated linearly between cell centers, through u(1) = 0 at the
/// boundary and by extrapolation from the first two cells near the origin.
HenonSubstitution henon_substitution(const RadialFunction& u, double alpha, double p);

struct DominatedLimitReport {
  double kappa;  ///< 2 - N + (N+beta)/(q+1); the substitution exponent is eps*kappa
  double limit;  ///< Gamma(p+2) / N^{p+2}
  std::vector<double> eps;
  std::vector<double> integrals;
  std::vector<double> errors;
  bool monotone;             ///< errors non-increasing along eps
  bool dominated;            ///< g_eps(t) <= (-log t)^{p+1} at every sampled t
};

/// Integrates g_eps(t) = |(t^{eps kappa} - 1)/(eps kappa)|^{p+1} t^{N-1} over
/// (0,1) for each eps. Throws DegenerateExponent when kappa = 0 and
/// InvalidArgument unless eps is positive and strictly decreasing.
DominatedLimitReport dominated_limit_check(double p, int N, const std::vector<double>& eps,
                                           double q = 4.0, double beta = 0.0);

/// Radial levels and boundary-cap upper bounds along an alpha sweep, with
/// both log-log fits and the exponents they should approach.
struct LevelSweep {
  std::vector<double> alphas;
  std::vector<double> radial;
  std::vector<double> upper;
  std::vector<int> cells;
  std::vector<bool> converged;
  SlopeFit radial_fit;
  SlopeFit upper_fit;
  double radial_theory;
  double upper_theory;
};

/// Scalar problem; grids from recommended_radial_cells.
LevelSweep scalar_level_sweep(int N, double p, const std::vector<double>& alphas, double tol = 1e-8,
                              int jobs = 1);

/// System problem with spec.alpha replaced by each sweep value.
LevelSweep system_level_sweep(const ProblemSpec& spec, const std::vector<double>& alphas,
                              double tol = 1e-8, int jobs = 1);

}  // namespace hsl
