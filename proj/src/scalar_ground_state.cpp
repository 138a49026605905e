#include "hsl/scalar_ground_state.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "hsl/bump.hpp"
#include "hsl/errors.hpp"
#include "hsl/exponents.hpp"
#include "hsl/parallel.hpp"

namespace hsl {

DescentOptions SolverOptions::descent() const {
  DescentOptions d;
  d.tol = tol;
  d.max_iter = max_iter;
  d.observer = observer;
  return d;
}

namespace {

// |t|^e with fast paths for the common integer powers.
inline double abs_pow(double t, double e) {
  const double a = std::abs(t);
  if (e == 2.0) return a * a;
  if (e == 4.0) {
    const double s = a * a;
    return s * s;
  }
  if (e == 3.0) return a * a * a;
  return std::pow(a, e);
}

// |t|^{p-1} t
inline double signed_pow(double t, double p) {
  if (p == 1.0) return t;
  if (p == 3.0) return t * t * t;
  if (p == 2.0) return t * std::abs(t);
  return std::copysign(std::pow(std::abs(t), p), t);
}

struct RadialOperator {
  Tridiagonal K;
  std::vector<double> apply(std::span<const double> u) const { return K.apply(u); }
  std::vector<double> solve(std::span<const double> b) const { return K.solve(b); }
};

struct DiskOperator {
  DiskGrid grid;
  DiskPoissonSolver solver;
  explicit DiskOperator(const DiskGrid& g) : grid(g), solver(g) {}
  std::vector<double> apply(std::span<const double> u) const {
    return disk_stiffness_apply(grid, u);
  }
  std::vector<double> solve(std::span<const double> b) const { return solver.solve(b); }
};

// R(u) = u^T K u / (sum w |u|^{p+1})^{2/(p+1)} with the H^1 metric
// P = 2K / D^{2/(p+1)}, under which a unit step is nonlinear inverse
// iteration.
template <class Op>
class ScalarQuotient {
 public:
  ScalarQuotient(Op op, std::vector<double> weights, double p)
      : op_(std::move(op)), w_(std::move(weights)), p_(p) {}

  double denominator(std::span<const double> u) const {
    double d = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) d += w_[k] * abs_pow(u[k], p_ + 1.0);
    return d;
  }

  double value(std::span<const double> u) const {
    const auto Ku = op_.apply(u);
    double e = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) e += Ku[k] * u[k];
    const double d = denominator(u);
    if (!(d > 0.0)) return std::numeric_limits<double>::infinity();
    return e / std::pow(d, 2.0 / (p_ + 1.0));
  }

  double value_grad(std::span<const double> u, std::vector<double>& grad) const {
    const auto Ku = op_.apply(u);
    double e = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) e += Ku[k] * u[k];
    const double d = denominator(u);
    if (!(d > 0.0)) fail(ErrorCode::ZeroDenominator, "weighted (p+1)-norm vanishes");
    const double ds = std::pow(d, 2.0 / (p_ + 1.0));
    grad.resize(u.size());
    const double ratio = e / d;
    for (std::size_t k = 0; k < u.size(); ++k)
      grad[k] = 2.0 / ds * (Ku[k] - ratio * w_[k] * signed_pow(u[k], p_));
    return e / ds;
  }

  std::vector<double> precondition(std::span<const double> u, std::span<const double> grad) {
    auto x = op_.solve(grad);
    const double half_ds = 0.5 * std::pow(denominator(u), 2.0 / (p_ + 1.0));
    for (auto& v : x) v *= half_ds;
    return x;
  }

  double metric_norm_sq(std::span<const double> u) { return 2.0 * value(u); }

  void normalize(std::span<double> u) const {
    const double d = denominator(u);
    if (!(d > 0.0)) fail(ErrorCode::ZeroDenominator, "cannot normalize a zero function");
    const double c = std::pow(d, -1.0 / (p_ + 1.0));
    for (auto& v : u) v *= c;
  }

  bool relax() { return false; }

  const std::vector<double>& weights() const { return w_; }

 private:
  Op op_;
  std::vector<double> w_;
  double p_;
};

std::vector<double> disk_node_weights(const DiskGrid& grid, double alpha) {
  const auto wr = grid.cell_weights(alpha);
  std::vector<double> w(grid.size());
  for (int i = 0; i < grid.radial_cells(); ++i)
    for (int j = 0; j < grid.angular_cells(); ++j) w[grid.index(i, j)] = wr[i];
  return w;
}

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorCode::InvalidArgument, "p must be >= 1");
}

template <class Q>
double checked_value(const Q& q, std::span<const double> u) {
  if (!(q.denominator(u) > std::numeric_limits<double>::min()))
    fail(ErrorCode::ZeroDenominator, "weighted (p+1)-norm underflows");
  return q.value(u);
}

ScalarQuotient<RadialOperator> radial_quotient(const RadialGrid& grid, double alpha, double p) {
  return {RadialOperator{radial_stiffness(grid)}, grid.cell_weights(alpha), p};
}

ScalarQuotient<DiskOperator> disk_quotient(const DiskGrid& grid, double alpha, double p) {
  return {DiskOperator(grid), disk_node_weights(grid, alpha), p};
}

}  // namespace

void normalize_minimizer(std::vector<double>& values, const std::vector<double>& weights,
                         double p) {
  double s = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) s += weights[k] * values[k];
  const double sign = s < 0.0 ? -1.0 : 1.0;
  double d = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = std::abs(sign * values[k]);
    d += weights[k] * abs_pow(values[k], p + 1.0);
  }
  if (!(d > 0.0)) fail(ErrorCode::ZeroDenominator, "cannot normalize a zero function");
  const double c = std::pow(d, -1.0 / (p + 1.0));
  for (auto& v : values) v *= c;
}

double rayleigh_scalar(const RadialFunction& u, double alpha, double p) {
  check_p(p);
  return checked_value(radial_quotient(u.grid, alpha, p), u.values);
}

double rayleigh_scalar(const DiskFunction& u, double alpha, double p) {
  check_p(p);
  // The Poisson solver is not needed for evaluation; use the stiffness only.
  const auto w = disk_node_weights(u.grid, alpha);
  double d = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) d += w[k] * abs_pow(u.values[k], p + 1.0);
  if (!(d > std::numeric_limits<double>::min()))
    fail(ErrorCode::ZeroDenominator, "weighted (p+1)-norm underflows");
  return disk_dirichlet_energy(u) / std::pow(d, 2.0 / (p + 1.0));
}

std::vector<double> rayleigh_scalar_gradient(const RadialFunction& u, double alpha, double p) {
  check_p(p);
  std::vector<double> g;
  radial_quotient(u.grid, alpha, p).value_grad(u.values, g);
  return g;
}

std::vector<double> rayleigh_scalar_gradient(const DiskFunction& u, double alpha, double p) {
  check_p(p);
  std::vector<double> g;
  disk_quotient(u.grid, alpha, p).value_grad(u.values, g);
  return g;
}

RadialGroundState minimize_radial(int N, double p, double alpha, const RadialGrid& grid,
                                  const SolverOptions& opts,
                                  const std::optional<RadialFunction>& initial) {
  check_p(p);
  if (grid.dimension() != N) fail(ErrorCode::InvalidArgument, "grid dimension differs from N");
  if (N < 2) fail(ErrorCode::DimensionTooSmall, "N must be >= 2");
  if (!(alpha > -N)) fail(ErrorCode::WeightOutOfRange, "alpha must be > -N");
  if (grid.cells() < 3) fail(ErrorCode::GridTooCoarse, "radial solver needs m >= 3");
  if (N >= 3 && !(p + 1.0 < ni_exponent(N, alpha)))
    fail(ErrorCode::SupercriticalExponent,
         "p+1 must be below the radial critical exponent " + std::to_string(ni_exponent(N, alpha)));

  auto prob = radial_quotient(grid, alpha, p);
  std::vector<double> u;
  if (initial) {
    if (!(initial->grid == grid)) fail(ErrorCode::InvalidArgument, "initial guess grid mismatch");
    u = initial->values;
  } else {
    u = RadialFunction::sample(grid, [](double r) { return 1.0 - r * r; }).values;
  }
  const auto res = projected_descent(prob, u, opts.descent());
  normalize_minimizer(u, prob.weights(), p);
  const double level = prob.value(u);
  return {level, RadialFunction{grid, std::move(u)}, res.iterations, res.kkt, res.converged};
}

std::string to_string(DiskInit init) {
  switch (init) {
    case DiskInit::Radial: return "radial";
    case DiskInit::BoundaryBump: return "bump";
    case DiskInit::Random: return "random";
  }
  return "radial";
}

DiskInit parse_disk_init(const std::string& s) {
  if (s == "radial") return DiskInit::Radial;
  if (s == "bump") return DiskInit::BoundaryBump;
  if (s == "random") return DiskInit::Random;
  fail(ErrorCode::InvalidArgument, "unknown init '" + s + "' (radial|bump|random)");
}

namespace {

void check_disk_problem(double p, double alpha, const DiskGrid& grid) {
  check_p(p);
  if (!(alpha >= 0.0)) fail(ErrorCode::WeightOutOfRange, "disk solver needs alpha >= 0");
  if (grid.radial_cells() < 3 || grid.angular_cells() < 8)
    fail(ErrorCode::GridTooCoarse, "disk solver needs m_r >= 3 and m_t >= 8");
}

DiskGroundState run_disk(ScalarQuotient<DiskOperator>& prob, const DiskGrid& grid, double p,
                         std::vector<double> u, const SolverOptions& opts) {
  const auto res = projected_descent(prob, u, opts.descent());
  normalize_minimizer(u, prob.weights(), p);
  const double level = prob.value(u);
  return {level, DiskFunction{grid, std::move(u)}, res.iterations, res.kkt, res.converged};
}

std::vector<double> disk_start(double p, double alpha, const DiskGrid& grid,
                               const SolverOptions& opts, DiskInit init, std::uint64_t seed,
                               const RadialGroundState* radial) {
  switch (init) {
    case DiskInit::Radial: {
      if (radial) return DiskFunction::from_radial(radial->minimizer, grid.angular_cells()).values;
      const auto rad = minimize_radial(2, p, alpha, grid.radial(), opts);
      return DiskFunction::from_radial(rad.minimizer, grid.angular_cells()).values;
    }
    case DiskInit::BoundaryBump: {
      const double w = std::min(0.5, std::max(default_bump_width(alpha), 4.0 * grid.spacing()));
      return boundary_bump(grid, alpha, p, w).function.values;
    }
    case DiskInit::Random: {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> dist(0.0, 1.0);
      std::vector<double> u(grid.size());
      for (auto& v : u) v = dist(rng);
      return u;
    }
  }
  return {};
}

}  // namespace

DiskGroundState minimize_disk(double p, double alpha, const DiskGrid& grid,
                              const SolverOptions& opts, DiskInit init) {
  check_disk_problem(p, alpha, grid);
  auto prob = disk_quotient(grid, alpha, p);
  return run_disk(prob, grid, p, disk_start(p, alpha, grid, opts, init, opts.seed, nullptr), opts);
}

DiskGroundState minimize_disk_multistart(double p, double alpha, const DiskGrid& grid,
                                         const SolverOptions& opts,
                                         const RadialGroundState* radial) {
  check_disk_problem(p, alpha, grid);
  auto prob = disk_quotient(grid, alpha, p);
  struct Start {
    DiskInit init;
    std::uint64_t seed;
  };
  const Start starts[] = {{DiskInit::Radial, opts.seed},
                          {DiskInit::BoundaryBump, opts.seed},
                          {DiskInit::Random, opts.seed},
                          {DiskInit::Random, opts.seed + 1}};
  std::optional<DiskGroundState> best;
  int total_iterations = 0;
  for (const auto& s : starts) {
    auto gs = run_disk(prob, grid, p, disk_start(p, alpha, grid, opts, s.init, s.seed, radial),
                       opts);
    total_iterations += gs.iterations;
    if (!best || gs.level < best->level) best = std::move(gs);
  }
  best->iterations = total_iterations;
  return std::move(*best);
}

int recommended_radial_cells(int N, double alpha, int base, int cells_per_layer) {
  const double layer = N / (N + std::max(alpha, 0.0));
  const double want = cells_per_layer / layer;
  const auto m = std::bit_ceil(static_cast<unsigned>(std::ceil(std::max<double>(want, base))));
  return static_cast<int>(std::min(m, 1u << 16));
}

ScanResult scan_alpha(double p, const std::vector<double>& alphas, const DiskGrid& grid,
                      const ScanOptions& opts) {
  for (std::size_t k = 1; k < alphas.size(); ++k)
    if (!(alphas[k] > alphas[k - 1]))
      fail(ErrorCode::InvalidArgument, "scan alphas must be strictly increasing");
  ScanResult out{p, std::vector<ScanRow>(alphas.size())};
  parallel_for(alphas.size(), opts.jobs, [&](std::size_t k) {
    const double a = alphas[k];
    const auto rad = minimize_radial(2, p, a, grid.radial(), opts.solver);
    const auto full = minimize_disk_multistart(p, a, grid, opts.solver, &rad);
    out.rows[k] = {a, rad.level, full.level, rad.level / full.level,
                   rad.iterations + full.iterations};
  });
  return out;
}

AlphaStarResult find_alpha_star(double p, const AlphaStarOptions& opts) {
  if (!(opts.hi > opts.lo) || !(opts.coarse_step > 0.0))
    fail(ErrorCode::InvalidArgument, "alpha-star search interval is empty");
  AlphaStarResult out{};
  const double threshold = 1.0 + opts.delta;

  std::vector<double> alphas;
  for (double a = opts.lo; a <= opts.hi + 1e-9; a += opts.coarse_step) alphas.push_back(a);
  const DiskGrid coarse(opts.m_r, opts.m_t);
  out.coarse_scan = scan_alpha(p, alphas, coarse, opts.scan).rows;
  out.evaluations += static_cast<int>(alphas.size());

  std::size_t k = 0;
  while (k < out.coarse_scan.size() && !(out.coarse_scan[k].ratio > threshold)) ++k;
  if (k == out.coarse_scan.size())
    fail(ErrorCode::NotBracketed, "ratio never exceeds 1+delta on the search interval");
  if (k == 0) fail(ErrorCode::NotBracketed, "ratio already exceeds 1+delta at the lower end");

  auto ratio_at = [&](double a, const DiskGrid& grid) {
    ++out.evaluations;
    return scan_alpha(p, {a}, grid, opts.scan).rows.front().ratio;
  };
  // Invariant: ratio(lo) <= threshold < ratio(hi).
  auto bisect = [&](double lo, double hi, const DiskGrid& grid) {
    double r_hi = NAN;
    while (hi - lo > opts.rel_tol * hi) {
      const double mid = 0.5 * (lo + hi);
      const double r = ratio_at(mid, grid);
      if (r > threshold) {
        hi = mid;
        r_hi = r;
      } else {
        lo = mid;
      }
    }
    return std::pair{0.5 * (lo + hi), r_hi};
  };

  const double lo0 = out.coarse_scan[k - 1].alpha;
  const double hi0 = out.coarse_scan[k].alpha;
  auto [a_coarse, r_coarse] = bisect(lo0, hi0, coarse);
  out.alpha_star_coarse = a_coarse;
  out.alpha_star = a_coarse;
  out.ratio_at_star = std::isnan(r_coarse) ? out.coarse_scan[k].ratio : r_coarse;
  out.alpha_star_fine = NAN;

  if (opts.refine) {
    const DiskGrid fine(2 * opts.m_r, 2 * opts.m_t);
    // Re-bracket around the coarse estimate on the refined grid.
    double step = std::max(opts.rel_tol * a_coarse, 0.05 * a_coarse);
    double lo = std::max(opts.lo, a_coarse - step);
    double hi = std::min(opts.hi, a_coarse + step);
    while (ratio_at(lo, fine) > threshold) {
      if (lo <= opts.lo) fail(ErrorCode::NotBracketed, "refined ratio exceeds 1+delta at lo");
      hi = lo;
      step *= 2.0;
      lo = std::max(opts.lo, lo - step);
    }
    while (!(ratio_at(hi, fine) > threshold)) {
      if (hi >= opts.hi) fail(ErrorCode::NotBracketed, "refined ratio stays below 1+delta");
      lo = hi;
      step *= 2.0;
      hi = std::min(opts.hi, hi + step);
    }
    auto [a_fine, r_fine] = bisect(lo, hi, fine);
    out.alpha_star_fine = a_fine;
    out.alpha_star = a_fine;
    if (!std::isnan(r_fine)) out.ratio_at_star = r_fine;
  }
  return out;
}

}  // namespace hsl
