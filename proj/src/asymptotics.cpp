#include "hsl/asymptotics.hpp"

#include <algorithm>
#include <cstdlib>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <string>

#include "hsl/bump.hpp"
#include "hsl/errors.hpp"
#include "hsl/parallel.hpp"
#include "hsl/scalar_ground_state.hpp"
#include "hsl/system_ground_state.hpp"

namespace hsl {

SlopeFit fit_log_slope(const std::vector<std::pair<double, double>>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 4) fail(ErrorCode::NonPositiveData, "slope fit needs at least 4 points");
  std::vector<double> x(n), y(n);
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto [a, l] = points[i];
    if (!(a > 0.0) || !(l > 0.0) || !std::isfinite(a) || !std::isfinite(l))
      fail(ErrorCode::NonPositiveData, "slope fit needs positive finite alpha and level");
    x[i] = std::log(a);
    y[i] = std::log(l);
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) fail(ErrorCode::NonPositiveData, "slope fit needs distinct alphas");
  SlopeFit fit;
  fit.n_points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = y[i] - fit.intercept - fit.slope * x[i];
    sse += e * e;
  }
  const double se = std::sqrt(sse / (n - 2) / sxx);
  const boost::math::students_t dist(n - 2);
  fit.half_width = boost::math::quantile(boost::math::complement(dist, 0.025)) * se;
  return fit;
}

std::vector<double> geometric_sweep(double lo, double hi, double ratio, int min_points) {
  if (!(lo > 0.0) || !(hi >= lo) || !(ratio > 1.0))
    fail(ErrorCode::InvalidArgument, "geometric sweep needs 0 < lo <= hi and ratio > 1");
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double a = lo * std::pow(ratio, k);
    if (a > hi * (1.0 + 1e-12)) break;
    out.push_back(a);
  }
  if (static_cast<int>(out.size()) < min_points && hi > lo) {
    out.resize(min_points);
    for (int k = 0; k < min_points; ++k) out[k] = lo * std::pow(hi / lo, k / (min_points - 1.0));
  }
  return out;
}

std::vector<std::pair<double, double>> read_alpha_level_csv(std::istream& in) {
  std::vector<std::pair<double, double>> out;
  std::string line;
  int lineno = 0;
  bool seen_row = false;
  std::size_t ia = 0, il = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    for (auto& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream ss(line);
    std::vector<std::string> cells;
    for (std::string c; ss >> c;) cells.push_back(c);
    std::vector<double> nums;
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (end == c.c_str() || *end != '\0') break;
      nums.push_back(v);
    }
    if (nums.size() != cells.size()) {
      if (seen_row) fail(ErrorCode::IoError, "bad csv row " + std::to_string(lineno));
      // Header: pick the alpha column and the first level-like column.
      for (std::size_t k = 0; k < cells.size(); ++k) {
        if (cells[k] == "alpha") ia = k;
        if ((cells[k] == "level" || cells[k] == "level_rad") && il == 1) il = k;
      }
      seen_row = true;
      continue;
    }
    seen_row = true;
    if (nums.size() <= std::max(ia, il)) fail(ErrorCode::IoError, "short csv row " + std::to_string(lineno));
    out.emplace_back(nums[ia], nums[il]);
  }
  return out;
}

namespace {

double interpolate(const RadialFunction& u, double r) {
  const int m = u.grid.cells();
  const double h = u.grid.spacing();
  const double s = r / h - 0.5;
  if (s >= m - 1) {
    // Toward the ghost value -u_{m-1} at 1 + h/2.
    const double t = s - (m - 1);
    return u.values[m - 1] * (1.0 - 2.0 * t);
  }
  const int i = std::clamp(static_cast<int>(std::floor(s)), 0, m - 2);
  const double t = s - i;
  return (1.0 - t) * u.values[i] + t * u.values[i + 1];
}

// log |(e^{-ek s} - 1) / ek|, safe where the exponential overflows.
double log_g_base(double ek, double s) {
  const double x = -ek * s;
  const double l = x > 30.0 ? x : std::log(std::abs(std::expm1(x)));
  return l - std::log(std::abs(ek));
}

}  // namespace

HenonSubstitution henon_substitution(const RadialFunction& u, double alpha, double p) {
  const int N = u.grid.dimension();
  if (!(alpha > -N)) fail(ErrorCode::WeightOutOfRange, "alpha must exceed -N");
  const double eps = N / (N + alpha);
  HenonSubstitution out{eps, RadialFunction::zeros(u.grid), 0.0};
  const int m = u.grid.cells();
  for (int i = 0; i < m; ++i) out.v.values[i] = interpolate(u, std::pow(u.grid.node(i), eps));
  const auto wa = u.grid.cell_weights(alpha);
  const auto w0 = u.grid.cell_weights(0.0);
  double lhs = 0.0, rhs = 0.0;
  for (int i = 0; i < m; ++i) {
    lhs += wa[i] * std::pow(std::abs(u.values[i]), p + 1.0);
    rhs += w0[i] * std::pow(std::abs(out.v.values[i]), p + 1.0);
  }
  out.identity_gap = std::abs(lhs - eps * rhs);
  return out;
}

DominatedLimitReport dominated_limit_check(double p, int N, const std::vector<double>& eps,
                                           double q, double beta) {
  if (N < 1) fail(ErrorCode::DimensionTooSmall, "N must be positive");
  if (!(p > 0.0)) fail(ErrorCode::InvalidArgument, "p must be positive");
  if (eps.empty()) fail(ErrorCode::InvalidArgument, "empty eps list");
  for (std::size_t k = 0; k < eps.size(); ++k)
    if (!(eps[k] > 0.0) || (k > 0 && !(eps[k] < eps[k - 1])))
      fail(ErrorCode::InvalidArgument, "eps list must be positive and strictly decreasing");
  const double kappa = 2.0 - N + (N + beta) / (q + 1.0);
  if (std::abs(kappa) <= 1e-12)
    fail(ErrorCode::DegenerateExponent, "q+1 = (N+beta)/(N-2): the substitution exponent vanishes");

  DominatedLimitReport rep{kappa, std::tgamma(p + 2.0) / std::pow(N, p + 2.0), eps, {}, {}, true, true};
  const double pp = p + 1.0;
  boost::math::quadrature::exp_sinh<double> quad;
  // With t = e^{-s}, g_eps dt = |expm1(-eps kappa s)/(eps kappa)|^{p+1} e^{-N s} ds.
  for (double e : eps) {
    const double ek = e * kappa;
    double I = std::numeric_limits<double>::infinity();
    if (ek * pp > -N) {
      auto f = [&](double s) {
        return std::exp(pp * log_g_base(ek, s) - N * s);
      };
      I = quad.integrate(f, 1e-13);
    }
    rep.integrals.push_back(I);
    rep.errors.push_back(std::abs(I - rep.limit));
    for (int k = 0; k < 400 && rep.dominated; ++k) {
      const double s = 1e-6 * std::pow(1e8, k / 399.0);
      const double lg = pp * log_g_base(ek, s) - (N - 1.0) * s;
      if (lg > pp * std::log(s) + 1e-12) rep.dominated = false;
    }
  }
  for (std::size_t k = 1; k < rep.errors.size(); ++k)
    if (rep.errors[k] > rep.errors[k - 1]) rep.monotone = false;
  return rep;
}

namespace {

template <class Solve>
LevelSweep run_sweep(int N, const std::vector<double>& alphas, int jobs, Solve&& solve) {
  const std::size_t n = alphas.size();
  LevelSweep out;
  out.alphas = alphas;
  out.radial.resize(n);
  out.upper.resize(n);
  out.cells.resize(n);
  std::vector<char> conv(n);
  parallel_for(n, jobs, [&](std::size_t k) {
    out.cells[k] = recommended_radial_cells(N, alphas[k]);
    bool c = false;
    solve(alphas[k], out.cells[k], out.radial[k], out.upper[k], c);
    conv[k] = c;
  });
  out.converged.assign(conv.begin(), conv.end());
  std::vector<std::pair<double, double>> rad, up;
  for (std::size_t k = 0; k < n; ++k) {
    rad.emplace_back(alphas[k], out.radial[k]);
    up.emplace_back(alphas[k], out.upper[k]);
  }
  out.radial_fit = fit_log_slope(rad);
  out.upper_fit = fit_log_slope(up);
  return out;
}

}  // namespace

LevelSweep scalar_level_sweep(int N, double p, const std::vector<double>& alphas, double tol,
                              int jobs) {
  SolverOptions o;
  o.tol = tol;
  auto out = run_sweep(N, alphas, jobs, [&](double a, int m, double& rad, double& up, bool& c) {
    const auto gs = minimize_radial(N, p, a, RadialGrid(N, m), o);
    rad = gs.level;
    c = gs.converged;
    up = bump_upper_scalar(N, a, p).quotient;
  });
  const auto th = theoretical_slopes(N, p, 2.0);
  out.radial_theory = th.scalar_rad;
  out.upper_theory = th.scalar_upper;
  return out;
}

LevelSweep system_level_sweep(const ProblemSpec& spec, const std::vector<double>& alphas,
                              double tol, int jobs) {
  SolverOptions o;
  o.tol = tol;
  auto out = run_sweep(spec.N, alphas, jobs, [&](double a, int m, double& rad, double& up, bool& c) {
    ProblemSpec s = spec;
    s.alpha = a;
    const auto gs = minimize_system_radial(SystemSpec(s), RadialGrid(s.N, m), o);
    rad = gs.level;
    c = gs.converged;
    up = bump_upper_system(s.N, a, s.beta, s.p, s.q).quotient;
  });
  const auto th = theoretical_slopes(spec.N, spec.p, spec.q);
  out.radial_theory = th.system_rad_lower;
  out.upper_theory = th.system_upper;
  return out;
}

}  // namespace hsl
