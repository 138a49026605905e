#pragma once

#include <map>
#include <string>

namespace hsl {

/// Dimension, weight exponents and power exponents of the weighted
/// Lane-Emden system -Δv = |x|^alpha u^p, -Δu = |x|^beta v^q on the unit
/// ball. Scalar problems ignore beta and q.
struct ProblemSpec {
  int N = 3;
  double alpha = 0.0;
  double beta = 0.0;
  double p = 2.0;
  double q = 2.0;

  /// Throws InvalidArgument / DimensionTooSmall / WeightOutOfRange.
  /// `allow_linear` admits p = 1 or q = 1, the eigenvalue limit used by the
  /// solvers.
  void validate(bool allow_linear = false) const;
};

enum class Side { Below, On, Above };

std::string to_string(Side side);

struct Verdict {
  bool holds = false;
  std::string reason;
};

struct HyperbolaReport {
  double gap = 0.0;    ///< (N+a)/(p+1) + (N+b)/(q+1) - (N-2)
  Side side = Side::On;
  double m_gap = 0.0;  ///< same with unweighted numerators
  std::map<std::string, Verdict> hypotheses;
};

inline constexpr double kOnHyperbolaTol = 1e-12;

/// 2N/(N-2) for order 1 (needs N >= 3), 2N/(N-4) for order 2 (needs N >= 5).
double critical_exponent(int N, int order);

/// Radial critical exponent of the weighted equation, 2N/(N-2) + 2 alpha/(N-2).
double ni_exponent(int N, double alpha);

double hyperbola_gap(const ProblemSpec& spec);

/// Unweighted gap N/(p+1) + N/(q+1) - (N-2).
double m_hyperbola_gap(const ProblemSpec& spec);

HyperbolaReport classify_point(const ProblemSpec& spec, double tol = kOnHyperbolaTol);

/// Exponents of the asymptotic level estimates as alpha -> infinity.
struct TheoreticalSlopes {
  double scalar_rad;        ///< radial scalar level ~ alpha^{1+2/(p+1)}
  double scalar_upper;      ///< boundary-bump upper bound, alpha^{2-N+2N/(p+1)}
  double system_rad_lower;  ///< radial system level lower bound
  double system_upper;      ///< system boundary-bump upper bound
};

/// q only enters the system exponents; pass any value > 1 for scalar use.
TheoreticalSlopes theoretical_slopes(int N, double p, double q);

/// Conjugate exponent r = (q+1)/q of the reduced fourth-order quotient.
inline double conjugate_exponent(double q) { return (q + 1.0) / q; }

}  // namespace hsl
