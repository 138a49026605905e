#include "hsl/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "hsl/errors.hpp"

namespace hsl {
namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// A single named inequality "lhs op rhs" used to build verdict reasons.
struct Condition {
  std::string text;
  bool holds;
  double lhs;
  double rhs;
};

Verdict all_of(const std::vector<Condition>& conditions) {
  Verdict v{true, {}};
  std::string failed;
  for (const auto& c : conditions) {
    if (!c.holds) {
      v.holds = false;
      if (!failed.empty()) failed += "; ";
      failed += c.text + " (" + num(c.lhs) + " vs " + num(c.rhs) + ")";
    }
  }
  v.reason = v.holds ? "all conditions hold" : "fails: " + failed;
  return v;
}

Condition gt(std::string text, double lhs, double rhs) {
  return {std::move(text), lhs > rhs, lhs, rhs};
}
Condition ge(std::string text, double lhs, double rhs) {
  return {std::move(text), lhs >= rhs, lhs, rhs};
}
Condition lt(std::string text, double lhs, double rhs) {
  return {std::move(text), lhs < rhs, lhs, rhs};
}
Condition le(std::string text, double lhs, double rhs) {
  return {std::move(text), lhs <= rhs, lhs, rhs};
}

}  // namespace

void ProblemSpec::validate(bool allow_linear) const {
  if (N < 2) fail(ErrorCode::DimensionTooSmall, "N must be >= 2, got " + num(N));
  const double pmin = 1.0;
  const bool p_ok = allow_linear ? p >= pmin : p > pmin;
  const bool q_ok = allow_linear ? q >= pmin : q > pmin;
  if (!std::isfinite(p) || !p_ok)
    fail(ErrorCode::InvalidArgument, std::string("p must be ") + (allow_linear ? ">= 1" : "> 1") +
                                         ", got " + num(p));
  if (!std::isfinite(q) || !q_ok)
    fail(ErrorCode::InvalidArgument, std::string("q must be ") + (allow_linear ? ">= 1" : "> 1") +
                                         ", got " + num(q));
  if (!std::isfinite(alpha) || alpha <= -N)
    fail(ErrorCode::WeightOutOfRange, "alpha must be > -N, got " + num(alpha));
  if (!std::isfinite(beta) || beta <= -N)
    fail(ErrorCode::WeightOutOfRange, "beta must be > -N, got " + num(beta));
}

std::string to_string(Side side) {
  switch (side) {
    case Side::Below: return "Below";
    case Side::On: return "On";
    case Side::Above: return "Above";
  }
  return "On";
}

double critical_exponent(int N, int order) {
  if (order == 1) {
    if (N < 3) fail(ErrorCode::DimensionTooSmall, "first-order critical exponent needs N >= 3");
    return 2.0 * N / (N - 2.0);
  }
  if (order == 2) {
    if (N < 5) fail(ErrorCode::DimensionTooSmall, "second-order critical exponent needs N >= 5");
    return 2.0 * N / (N - 4.0);
  }
  fail(ErrorCode::InvalidArgument, "order must be 1 or 2");
}

double ni_exponent(int N, double alpha) {
  if (N < 3) fail(ErrorCode::DimensionTooSmall, "weighted critical exponent needs N >= 3");
  if (!(alpha > -N)) fail(ErrorCode::WeightOutOfRange, "alpha must be > -N");
  return 2.0 * N / (N - 2.0) + 2.0 * alpha / (N - 2.0);
}

double hyperbola_gap(const ProblemSpec& s) {
  return (s.N + s.alpha) / (s.p + 1.0) + (s.N + s.beta) / (s.q + 1.0) - (s.N - 2.0);
}

double m_hyperbola_gap(const ProblemSpec& s) {
  return s.N / (s.p + 1.0) + s.N / (s.q + 1.0) - (s.N - 2.0);
}

HyperbolaReport classify_point(const ProblemSpec& s, double tol) {
  if (!(tol >= 0.0)) fail(ErrorCode::InvalidArgument, "tol must be >= 0");
  HyperbolaReport rep;
  rep.gap = hyperbola_gap(s);
  rep.m_gap = m_hyperbola_gap(s);
  rep.side = rep.gap > tol ? Side::Below : (rep.gap < -tol ? Side::Above : Side::On);

  const double N = s.N;
  const double a = s.alpha;
  const double b = s.beta;
  const double m_lhs = rep.m_gap + (N - 2.0);
  const Condition below = gt("(N+alpha)/(p+1)+(N+beta)/(q+1) > N-2", rep.gap, tol);
  const Condition below_m = gt("N/(p+1)+N/(q+1) > N-2", m_lhs, N - 2.0);
  const double breaking_bound = ((N - 1.0) * s.q - 1.0) > 0.0 ? N / ((N - 1.0) * s.q - 1.0)
                                                              : INFINITY;
  const Condition breaking = gt("p > N/((N-1)q-1)", s.p, breaking_bound);

  auto& h = rep.hypotheses;

  // Existence with both weights negative, fractional-space setting.
  {
    std::vector<Condition> c{gt("alpha > -N", a, -N), lt("alpha < 0", a, 0.0),
                             gt("beta > -N", b, -N),   lt("beta < 0", b, 0.0),
                             below,
                             lt("1/(p+1)+1/(q+1) < 1", 1.0 / (s.p + 1) + 1.0 / (s.q + 1), 1.0)};
    if (s.N >= 5) {
      c.push_back(lt("p+1 < 2(N+alpha)/(N-4)", s.p + 1, 2 * (N + a) / (N - 4)));
      c.push_back(lt("q+1 < 2(N+beta)/(N-4)", s.q + 1, 2 * (N + b) / (N - 4)));
    }
    h["existence.negative_weights"] = all_of(c);
  }

  // Existence below the weighted hyperbola, three weight regimes.
  h["existence.hardy_case"] =
      all_of({below, le("alpha <= 0", a, 0.0), gt("alpha > -N", a, -N), le("beta <= 0", b, 0.0),
              gt("beta > -N", b, -N), gt("alpha+beta > -4", a + b, -4.0)});
  h["existence.henon_case"] =
      all_of({below, ge("alpha >= 0", a, 0.0), ge("beta >= 0", b, 0.0),
              lt("alpha N/(N+alpha) + beta N/(N+beta) < 4", a * N / (N + a) + b * N / (N + b),
                 4.0)});
  h["existence.mixed_case"] = all_of(
      {below, ge("alpha >= 0", a, 0.0), le("beta <= 0", b, 0.0), gt("beta > -N", b, -N)});

  // Pohozaev-type nonexistence on or above the weighted hyperbola.
  h["nonexistence.on_or_above"] =
      all_of({le("(N+alpha)/(p+1)+(N+beta)/(q+1) <= N-2", rep.gap, tol), gt("alpha > -N", a, -N),
              gt("beta > -N", b, -N)});

  // Hardy ground state, radially symmetric on the ball.
  h["existence.hardy_ground_state"] =
      all_of({le("alpha <= 0", a, 0.0), gt("alpha > -N", a, -N), le("beta <= 0", b, 0.0),
              gt("beta > -N", b, -N),
              gt("(N-|alpha|)/(p+1)+(N-|beta|)/(q+1) > N-2",
                 (N - std::abs(a)) / (s.p + 1) + (N - std::abs(b)) / (s.q + 1), N - 2.0)});

  // Boundary concentration as q approaches the weighted hyperbola. Recorded
  // only; nothing in the solvers acts on it.
  h["concentration.critical_limit"] =
      all_of({ge("alpha >= 0", a, 0.0), lt("alpha < pN", a, s.p * N), gt("beta > 0", b, 0.0),
              ge("N >= 8", N, 8.0),
              le("|gap| <= tol", std::abs(rep.gap), std::max(tol, kOnHyperbolaTol))});

  // Hénon system (alpha > 0, beta >= 0).
  const Condition henon_a = gt("alpha > 0", a, 0.0);
  const Condition henon_b = ge("beta >= 0", b, 0.0);
  h["henon.nonexistence"] =
      all_of({henon_a, henon_b, le("(N+alpha)/(p+1)+(N+beta)/(q+1) <= N-2", rep.gap, tol)});
  h["henon.radial_existence"] =
      all_of({henon_a, henon_b, gt("q > max{1, beta/N}", s.q, std::max(1.0, b / N)), below});
  h["henon.ground_state"] = all_of({henon_a, henon_b, below_m});
  h["henon.symmetry_breaking"] = all_of({henon_a, henon_b, below_m, breaking});

  // Hénon-Hardy mixed system (alpha > 0 > beta > -N).
  const Condition mixed_b = lt("beta < 0", b, 0.0);
  const Condition mixed_b2 = gt("beta > -N", b, -N);
  const double mixed_lhs = N / (s.p + 1) + (N - std::abs(b)) / (s.q + 1);
  const Condition mixed_below = gt("N/(p+1)+(N-|beta|)/(q+1) > N-2", mixed_lhs, N - 2.0);
  h["mixed.radial_existence"] = all_of({henon_a, mixed_b, mixed_b2, below});
  h["mixed.ground_state"] = all_of({henon_a, mixed_b, mixed_b2, mixed_below});
  h["mixed.symmetry_breaking"] = all_of({henon_a, mixed_b, mixed_b2, mixed_below, breaking});

  return rep;
}

TheoreticalSlopes theoretical_slopes(int N, double p, double q) {
  if (!(p >= 1.0)) fail(ErrorCode::InvalidArgument, "p must be >= 1");
  if (!(q >= 1.0)) fail(ErrorCode::InvalidArgument, "q must be >= 1");
  const double r = conjugate_exponent(q);
  TheoreticalSlopes s{};
  s.scalar_rad = 1.0 + 2.0 / (p + 1.0);
  s.scalar_upper = 2.0 - N + 2.0 * N / (p + 1.0);
  s.system_rad_lower = 2.0 * r + r / (p + 1.0) - 1.0 - 1.0 / q;
  s.system_upper = 2.0 * r - N + N * r / (p + 1.0);
  return s;
}

}  // namespace hsl
