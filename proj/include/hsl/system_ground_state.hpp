#pragma once

#include <string>

#include "hsl/exponents.hpp"
#include "hsl/grids.hpp"
#include "hsl/scalar_ground_state.hpp"

namespace hsl {

/// Radial reduction of -Δv = |x|^alpha u^p, -Δu = |x|^beta v^q to the
/// fourth-order quotient in u with conjugate exponent r = (q+1)/q.
struct SystemSpec {
  ProblemSpec base;
  double r;

  explicit SystemSpec(const ProblemSpec& spec);
};

struct SystemGroundState {
  RadialFunction u;       ///< rescaled so the pair solves the system
  RadialFunction v;
  double level = 0.0;     ///< radial level of the quotient
  double scale = 1.0;     ///< factor applied to the unit-denominator minimizer
  double lambda = 1.0;    ///< constant left in -Δv = lambda |x|^alpha u^p (1 unless pq = 1)
  double residual = 0.0;  ///< relative residual of the discrete system
  double pohozaev_residual = 0.0;
  int iterations = 0;
  double grad_norm = 0.0;
  bool converged = false;
};

/// ∫|x|^{-beta(r-1)}|Δu|^r / (∫|x|^alpha|u|^{p+1})^{r/(p+1)}. For r < 2 and
/// eps > 0, |t|^r becomes (t^2 + e^2)^{r/2} with e = eps * D^{1/(p+1)}, D the
/// denominator integral, which keeps the quotient 0-homogeneous.
double rayleigh_system(const RadialFunction& u, const SystemSpec& spec, double eps = 0.0);
std::vector<double> rayleigh_system_gradient(const RadialFunction& u, const SystemSpec& spec,
                                             double eps = 0.0);

/// Radial ground state with u(1) = 0 and the second boundary condition left
/// natural. Requires a positive weighted gap and, for beta > 0,
/// q > max(1, beta/N).
SystemGroundState minimize_system_radial(const SystemSpec& spec, const RadialGrid& grid,
                                         const SolverOptions& opts = {});

/// v = (-Δu)^{1/q} |x|^{-beta/q}, with the weight averaged over each cell.
/// Throws NegativeLaplacianBeyondTol if -Δu < -tol * max|Δu| anywhere.
RadialFunction recover_v(const RadialFunction& u, const SystemSpec& spec, double tol = 1e-6);

/// Dual: each equation's residual in the norm dual to the discrete Dirichlet
/// energy, relative to the same norm of its left side. Max: pointwise, relative
/// to max|Δ(.)|; near the boundary this amplifies rounding in u like h^-4.
enum class ResidualNorm { Dual, Max };

/// Larger of the two relative residuals of -Δu = |x|^beta v^q and
/// -Δv = lambda |x|^alpha u^p on the grid.
double system_residual(const RadialFunction& u, const RadialFunction& v, const SystemSpec& spec,
                       double lambda = 1.0, ResidualNorm norm = ResidualNorm::Dual);

struct PohozaevReport {
  double residual;       ///< |boundary term - gap * mass|
  double boundary_term;  ///< omega u'(1) v'(1)
  double gap;
  double mass;           ///< ∫|x|^alpha u^{p+1}
  std::string branch;    ///< "critical", "hardy" or "henon"
};

/// One-sided boundary derivatives u'(1) = -2 u_{m-1}/h. Throws NotASolution
/// when the dual-norm system residual of the pair exceeds tol.
PohozaevReport pohozaev_residual(const RadialFunction& u, const RadialFunction& v,
                                 const SystemSpec& spec, double tol = 1e-3, double lambda = 1.0);

struct SymmetryCertificate {
  double rad_level;
  double bump_upper;
  double bump_width;
  bool breaks;
};

/// Radial level against the boundary-cap upper bound. Requires alpha >= 0 and
/// a point below the unweighted hyperbola.
SymmetryCertificate system_symmetry_certificate(const SystemSpec& spec, const RadialGrid& grid,
                                                const SolverOptions& opts = {},
                                                double margin = 0.02);

}  // namespace hsl
