#include "hsl/system_ground_state.hpp"

#include <algorithm>
#include <cmath>

#include "hsl/bump.hpp"
#include "hsl/errors.hpp"

namespace hsl {

SystemSpec::SystemSpec(const ProblemSpec& spec) : base(spec), r(conjugate_exponent(spec.q)) {
  base.validate(true);
  if (!(-base.beta * (r - 1.0) > -base.N))
    fail(ErrorCode::WeightOutOfRange, "numerator weight |x|^{-beta/q} is not integrable");
}

namespace {

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

// Fourth-order quotient A(u)/D(u)^{r/(p+1)} with t = Lu = -(Ku)/M and
// A = sum V (t^2 + eps^2)^{r/2}. The metric is the Kacanov linearization
// H = L^T diag(V c) L, c = r (t^2 + eps^2)^{r/2-1}, inverted through two
// tridiagonal solves.
class SystemQuotient {
 public:
  SystemQuotient(const RadialGrid& grid, const SystemSpec& spec, double eps)
      : K_(radial_stiffness(grid)),
        M_(radial_cell_measures(grid)),
        V_(grid.cell_weights(-spec.base.beta * (spec.r - 1.0))),
        w_(grid.cell_weights(spec.base.alpha)),
        p_(spec.base.p),
        r_(spec.r),
        eps_(eps) {}

  std::vector<double> laplacian(std::span<const double> u) const {
    auto t = K_.apply(u);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = -t[i] / M_[i];
    return t;
  }

  double denominator(std::span<const double> u) const {
    double d = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) d += w_[i] * std::pow(std::abs(u[i]), p_ + 1.0);
    return d;
  }

  double numerator(std::span<const double> t, double e) const {
    double a = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) a += V_[i] * phi(t[i], e);
    return a;
  }

  double value(std::span<const double> u) const {
    const double d = denominator(u);
    if (!(d > 0.0)) return INFINITY;
    return numerator(laplacian(u), scaled_eps(d)) / std::pow(d, s());
  }

  double value_grad(std::span<const double> u, std::vector<double>& grad) const {
    const auto t = laplacian(u);
    const double d = denominator(u);
    if (!(d > 0.0)) fail(ErrorCode::ZeroDenominator, "weighted (p+1)-norm vanishes");
    const double e = scaled_eps(d);
    const double a = numerator(t, e);
    std::vector<double> y(t.size());
    double de = 0.0;  // dA/d(e^2)
    for (std::size_t i = 0; i < t.size(); ++i) {
      y[i] = V_[i] * t[i] * curvature(t[i], e) / M_[i];
      de += 0.5 * V_[i] * curvature(t[i], e);
    }
    auto ltv = K_.apply(y);  // -L^T (V phi'(t))
    const double ds = std::pow(d, s());
    // e^2 = eps^2 D^{2/(p+1)} contributes de * 2 e^2 / ((p+1) D) * D'.
    const double coef = (s() * a / d - de * 2.0 * e * e / ((p_ + 1.0) * d)) * (p_ + 1.0);
    grad.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double up = std::copysign(std::pow(std::abs(u[i]), p_), u[i]);
      grad[i] = (-ltv[i] - coef * w_[i] * up) / ds;
    }
    return a / ds;
  }

  std::vector<double> precondition(std::span<const double> u, std::span<const double> grad) {
    const auto t = laplacian(u);
    const double e = scaled_eps(denominator(u));
    auto z = K_.solve(grad);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = -M_[i] * z[i] / (V_[i] * curvature(t[i], e));
    for (std::size_t i = 0; i < z.size(); ++i) z[i] *= M_[i];
    auto x = K_.solve(z);
    const double ds = std::pow(denominator(u), s());
    for (auto& v : x) v *= -ds;
    return x;
  }

  double metric_norm_sq(std::span<const double> u) {
    const auto t = laplacian(u);
    const double e = scaled_eps(denominator(u));
    double n = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) n += V_[i] * curvature(t[i], e) * t[i] * t[i];
    return n / std::pow(denominator(u), s());
  }

  void normalize(std::span<double> u) const {
    const double d = denominator(u);
    if (!(d > 0.0)) fail(ErrorCode::ZeroDenominator, "cannot normalize a zero function");
    const double c = std::pow(d, -1.0 / (p_ + 1.0));
    for (auto& v : u) v *= c;
  }

  bool relax() {
    if (r_ == 2.0 || eps_ <= eps_floor_) return false;
    eps_ = std::max(0.5 * eps_, eps_floor_);
    return true;
  }

  void set_eps(double eps, double floor) {
    eps_ = eps;
    eps_floor_ = floor;
  }
  const std::vector<double>& weights() const { return w_; }

 private:
  double s() const { return r_ / (p_ + 1.0); }
  // Regularization scaled with the function so the quotient stays
  // 0-homogeneous; equals eps on the normalized sphere.
  double scaled_eps(double d) const {
    if (eps_ == 0.0 || r_ == 2.0) return 0.0;
    return eps_ * std::pow(d, 1.0 / (p_ + 1.0));
  }
  double phi(double t, double e) const {
    if (r_ == 2.0) return t * t;
    return std::pow(t * t + e * e, 0.5 * r_);
  }
  // phi'(t) / t
  double curvature(double t, double e) const {
    if (r_ == 2.0) return 2.0;
    return r_ * std::pow(t * t + e * e, 0.5 * r_ - 1.0);
  }

  Tridiagonal K_;
  std::vector<double> M_, V_, w_;
  double p_, r_, eps_;
  double eps_floor_ = 0.0;
};

void check_grid(const RadialFunction& u, const SystemSpec& spec) {
  if (u.grid.dimension() != spec.base.N)
    fail(ErrorCode::InvalidArgument, "grid dimension differs from N");
  if (u.grid.cells() < 3) fail(ErrorCode::GridTooCoarse, "system operators need m >= 3");
}

// Cell average of |x|^{-beta/q}; the discrete v carries this factor so that
// the recovered pair closes the discrete system exactly.
std::vector<double> v_weight(const RadialGrid& grid, const SystemSpec& spec) {
  auto V = grid.cell_weights(-spec.base.beta / spec.base.q);
  const auto M = radial_cell_measures(grid);
  for (std::size_t i = 0; i < V.size(); ++i) V[i] /= M[i];
  return V;
}

PohozaevReport pohozaev_terms(const RadialFunction& u, const RadialFunction& v,
                              const SystemSpec& spec, double lambda) {
  const auto& g = u.grid;
  const int m = g.cells();
  const double h = g.spacing();
  PohozaevReport rep{};
  const double du = -2.0 * u.values[m - 1] / h;
  const double dv = -2.0 * v.values[m - 1] / h;
  rep.boundary_term = g.surface_const() * du * dv;
  const auto w = g.cell_weights(spec.base.alpha);
  for (int i = 0; i < m; ++i) rep.mass += w[i] * std::pow(std::abs(u.values[i]), spec.base.p + 1.0);
  rep.mass *= lambda;
  const auto& b = spec.base;
  rep.gap = hyperbola_gap(b);
  if (std::abs(rep.gap) <= kOnHyperbolaTol) {
    rep.branch = "critical";
  } else if (b.alpha <= 0.0 && b.beta <= 0.0 && std::min(b.alpha, b.beta) < 0.0) {
    // (N-|alpha|)/(p+1) + (N-|beta|)/(q+1) - (N-2) with |a| = -a.
    rep.gap = (b.N - std::abs(b.alpha)) / (b.p + 1.0) + (b.N - std::abs(b.beta)) / (b.q + 1.0) -
              (b.N - 2.0);
    rep.branch = "hardy";
  } else {
    rep.branch = "henon";
  }
  rep.residual = std::abs(rep.boundary_term - rep.gap * rep.mass);
  return rep;
}

}  // namespace

double rayleigh_system(const RadialFunction& u, const SystemSpec& spec, double eps) {
  check_grid(u, spec);
  SystemQuotient q(u.grid, spec, eps);
  if (!(q.denominator(u.values) > std::numeric_limits<double>::min()))
    fail(ErrorCode::ZeroDenominator, "weighted (p+1)-norm underflows");
  return q.value(u.values);
}

std::vector<double> rayleigh_system_gradient(const RadialFunction& u, const SystemSpec& spec,
                                             double eps) {
  check_grid(u, spec);
  std::vector<double> g;
  SystemQuotient(u.grid, spec, eps).value_grad(u.values, g);
  return g;
}

RadialFunction recover_v(const RadialFunction& u, const SystemSpec& spec, double tol) {
  check_grid(u, spec);
  const auto lap = radial_laplacian(u);
  const double scale = max_abs(lap.values);
  const auto g = v_weight(u.grid, spec);
  RadialFunction v = RadialFunction::zeros(u.grid);
  for (int i = 0; i < u.grid.cells(); ++i) {
    const double f = -lap.values[i];
    if (f < -tol * scale)
      fail(ErrorCode::NegativeLaplacianBeyondTol,
           "-Δu = " + std::to_string(f) + " at r = " + std::to_string(u.grid.node(i)));
    v.values[i] = g[i] * std::pow(std::max(f, 0.0), 1.0 / spec.base.q);
  }
  return v;
}

double system_residual(const RadialFunction& u, const RadialFunction& v, const SystemSpec& spec,
                       double lambda, ResidualNorm norm) {
  check_grid(u, spec);
  if (!(u.grid == v.grid)) fail(ErrorCode::InvalidArgument, "u and v live on different grids");
  const auto K = radial_stiffness(u.grid);
  const auto g = v_weight(u.grid, spec);
  const auto w = u.grid.cell_weights(spec.base.alpha);
  const auto M = radial_cell_measures(u.grid);
  const double q = spec.base.q, p = spec.base.p;
  const int m = u.grid.cells();
  // Both equations in integrated form: K u = M (v/g)^q, K v = lambda w u^p.
  const auto Ku = K.apply(u.values);
  const auto Kv = K.apply(v.values);
  std::vector<double> r1(m), r2(m);
  for (int i = 0; i < m; ++i) {
    r1[i] = Ku[i] - M[i] * std::pow(std::abs(v.values[i]) / g[i], q);
    r2[i] = Kv[i] - lambda * w[i] * std::pow(std::abs(u.values[i]), p);
  }
  auto relative = [&](const std::vector<double>& r, const std::vector<double>& lhs) {
    double num = 0.0, den = 0.0;
    if (norm == ResidualNorm::Dual) {
      const auto kr = K.solve(r);
      const auto kl = K.solve(lhs);
      for (int i = 0; i < m; ++i) {
        num += r[i] * kr[i];
        den += lhs[i] * kl[i];
      }
      num = std::sqrt(std::max(num, 0.0));
      den = std::sqrt(std::max(den, 0.0));
    } else {
      for (int i = 0; i < m; ++i) {
        num = std::max(num, std::abs(r[i]) / M[i]);
        den = std::max(den, std::abs(lhs[i]) / M[i]);
      }
    }
    return den > 0.0 ? num / den : num;
  };
  return std::max(relative(r1, Ku), relative(r2, Kv));
}

PohozaevReport pohozaev_residual(const RadialFunction& u, const RadialFunction& v,
                                 const SystemSpec& spec, double tol, double lambda) {
  const double res = system_residual(u, v, spec, lambda);
  if (res > tol)
    fail(ErrorCode::NotASolution,
         "system residual " + std::to_string(res) + " exceeds " + std::to_string(tol));
  return pohozaev_terms(u, v, spec, lambda);
}

SystemGroundState minimize_system_radial(const SystemSpec& spec, const RadialGrid& grid,
                                         const SolverOptions& opts) {
  const auto& b = spec.base;
  if (grid.dimension() != b.N) fail(ErrorCode::InvalidArgument, "grid dimension differs from N");
  if (grid.cells() < 3) fail(ErrorCode::GridTooCoarse, "system solver needs m >= 3");
  const double gap = hyperbola_gap(b);
  if (!(gap > 0.0))
    fail(ErrorCode::HypothesisViolation,
         "radial existence needs (N+alpha)/(p+1)+(N+beta)/(q+1) > N-2, gap = " +
             std::to_string(gap));
  if (b.beta > 0.0 && !(b.q > std::max(1.0, b.beta / b.N)))
    fail(ErrorCode::HypothesisViolation, "radial existence with beta > 0 needs q > max(1, beta/N)");

  SystemQuotient prob(grid, spec, 0.0);
  std::vector<double> u = RadialFunction::sample(grid, [](double r) { return 1.0 - r * r; }).values;
  prob.normalize(u);
  const double t0 = max_abs(prob.laplacian(u));
  prob.set_eps(1e-2 * t0, 1e-8 * t0);
  auto dopts = opts.descent();
  dopts.relax_tol = std::max(opts.tol, 1e-4);
  const auto res = projected_descent(prob, u, dopts);
  normalize_minimizer(u, prob.weights(), b.p);

  SystemGroundState gs{RadialFunction{grid, u}, RadialFunction::zeros(grid)};
  prob.set_eps(0.0, 0.0);
  gs.level = prob.value(u);
  gs.iterations = res.iterations;
  gs.grad_norm = res.kkt;
  gs.converged = res.converged;
  const double pq1 = b.p * b.q - 1.0;
  if (std::abs(pq1) < 1e-14) {
    gs.lambda = gs.level;
  } else {
    gs.scale = std::pow(gs.level, b.q / pq1);
    for (auto& x : gs.u.values) x *= gs.scale;
  }
  gs.v = recover_v(gs.u, spec, 1e-6);
  gs.residual = system_residual(gs.u, gs.v, spec, gs.lambda);
  gs.pohozaev_residual = pohozaev_terms(gs.u, gs.v, spec, gs.lambda).residual;
  return gs;
}

SymmetryCertificate system_symmetry_certificate(const SystemSpec& spec, const RadialGrid& grid,
                                                const SolverOptions& opts, double margin) {
  const auto& b = spec.base;
  if (!(b.alpha >= 0.0))
    fail(ErrorCode::HypothesisViolation, "symmetry certificate needs alpha >= 0");
  if (!(m_hyperbola_gap(b) > 0.0))
    fail(ErrorCode::HypothesisViolation, "symmetry certificate needs N/(p+1)+N/(q+1) > N-2");
  if (!(margin >= 0.0 && margin < 1.0))
    fail(ErrorCode::InvalidArgument, "margin must lie in [0, 1)");
  const auto rad = minimize_system_radial(spec, grid, opts);
  const auto bump = bump_upper_system(b.N, b.alpha, b.beta, b.p, b.q);
  return {rad.level, bump.quotient, bump.width, bump.quotient < rad.level * (1.0 - margin)};
}

}  // namespace hsl
