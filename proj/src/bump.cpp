#include "hsl/bump.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hsl/errors.hpp"
#include "hsl/exponents.hpp"
#include "hsl/scalar_ground_state.hpp"

namespace hsl {
namespace {

using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;

constexpr double kQuadTol = 1e-11;

void check_width(double w) {
  if (!(w > 0.0 && w <= 0.5))
    fail(ErrorCode::InvalidArgument, "cap width must lie in (0, 1/2]");
}

template <class F>
double integrate(F f, double a, double b) {
  return gauss_kronrod<double, 31>::integrate(f, a, b, 15, kQuadTol);
}

}  // namespace

double cap_profile(double s) {
  if (s >= 1.0) return 0.0;
  const double t = 1.0 - s * s;
  return t * t;
}

double cap_profile_derivative(double s) {
  if (s >= 1.0) return 0.0;
  return -4.0 * s * (1.0 - s * s);
}

double cap_profile_laplacian(double s, int N) {
  if (s >= 1.0) return 0.0;
  return -4.0 * N + 4.0 * (N + 2.0) * s * s;
}

double default_bump_width(double alpha, double c) {
  if (!(alpha > 0.0)) return 0.5;
  return std::min(0.5, c / alpha);
}

double shell_weight_integral(int N, double a, double w, double rho) {
  if (N < 2) fail(ErrorCode::DimensionTooSmall, "cap integrals need N >= 2");
  if (rho <= 0.0) return 0.0;
  const double area = std::pow(rho, N - 1);
  if (a == 0.0) return unit_sphere_area(N) * area;
  const double d = 1.0 - w;
  // |x|^2 = (d - rho)^2 + 4 d rho cos^2(psi/2), psi the angle from e_1.
  auto f = [&](double psi) {
    const double c = std::cos(0.5 * psi);
    const double base = (d - rho) * (d - rho) + 4.0 * d * rho * c * c;
    double v = std::exp(0.5 * a * std::log(base));
    if (N > 2) v *= std::pow(std::sin(psi), N - 2);
    return v;
  };
  double inner;
  if (a < 0.0) {
    boost::math::quadrature::tanh_sinh<double> ts;
    inner = ts.integrate(f, 0.0, std::numbers::pi);
  } else {
    inner = integrate(f, 0.0, std::numbers::pi);
  }
  return unit_sphere_area(N - 1) * area * inner;
}

double cap_rayleigh_scalar(int N, double alpha, double p, double width) {
  check_width(width);
  if (!(alpha > -N)) fail(ErrorCode::WeightNotIntegrable, "alpha must be > -N");
  const double w = width;
  // integral |grad u|^2 = omega w^{N-2} int_0^1 phi'(s)^2 s^{N-1} ds
  const double grad = unit_sphere_area(N) * std::pow(w, N - 2) *
                      gauss<double, 20>::integrate(
                          [&](double s) {
                            const double d = cap_profile_derivative(s);
                            return d * d * std::pow(s, N - 1);
                          },
                          0.0, 1.0);
  const double denom = integrate(
      [&](double rho) {
        return std::pow(cap_profile(rho / w), p + 1.0) *
               shell_weight_integral(N, alpha, w, rho);
      },
      0.0, w);
  if (!(denom > 0.0)) fail(ErrorCode::ZeroDenominator, "cap denominator underflows");
  return grad / std::pow(denom, 2.0 / (p + 1.0));
}

double cap_rayleigh_system(int N, double alpha, double beta, double p, double q, double width) {
  check_width(width);
  if (!(alpha > -N)) fail(ErrorCode::WeightNotIntegrable, "alpha must be > -N");
  const double r = conjugate_exponent(q);
  const double a_num = -beta * (r - 1.0);
  if (!(a_num > -N)) fail(ErrorCode::WeightNotIntegrable, "numerator weight not integrable");
  const double w = width;
  // Delta u changes sign at s0; split there so the |.|^r kink is a node.
  const double s0 = std::sqrt(N / (N + 2.0));
  auto num_integrand = [&](double rho) {
    const double lap = cap_profile_laplacian(rho / w, N) / (w * w);
    return std::pow(std::abs(lap), r) * shell_weight_integral(N, a_num, w, rho);
  };
  const double num = integrate(num_integrand, 0.0, s0 * w) + integrate(num_integrand, s0 * w, w);
  const double denom = integrate(
      [&](double rho) {
        return std::pow(cap_profile(rho / w), p + 1.0) *
               shell_weight_integral(N, alpha, w, rho);
      },
      0.0, w);
  if (!(denom > 0.0)) fail(ErrorCode::ZeroDenominator, "cap denominator underflows");
  return num / std::pow(denom, r / (p + 1.0));
}

namespace {

template <class Quotient>
BumpSweep sweep(double alpha, Quotient quotient) {
  BumpSweep out{0.0, std::numeric_limits<double>::infinity(), {}, {}};
  for (int k = 0; k <= 16; ++k) {
    const double c = 0.25 * std::pow(std::sqrt(2.0), k);
    const double w = default_bump_width(alpha, c);
    if (!out.widths.empty() && w == out.widths.back()) continue;
    const double R = quotient(w);
    out.widths.push_back(w);
    out.quotients.push_back(R);
    if (R < out.quotient) {
      out.quotient = R;
      out.width = w;
    }
  }
  return out;
}

}  // namespace

BumpSweep bump_upper_scalar(int N, double alpha, double p) {
  return sweep(alpha, [&](double w) { return cap_rayleigh_scalar(N, alpha, p, w); });
}

BumpSweep bump_upper_system(int N, double alpha, double beta, double p, double q) {
  return sweep(alpha, [&](double w) { return cap_rayleigh_system(N, alpha, beta, p, q, w); });
}

BoundaryBump boundary_bump(const DiskGrid& grid, double alpha, double p, double width) {
  check_width(width);
  const double x0 = 1.0 - width;
  auto f = [&](double r, double theta) {
    const double dx = r * std::cos(theta) - x0;
    const double dy = r * std::sin(theta);
    return cap_profile(std::sqrt(dx * dx + dy * dy) / width);
  };
  BoundaryBump out{DiskFunction::sample(grid, f), width, cap_rayleigh_scalar(2, alpha, p, width),
                   std::numeric_limits<double>::infinity()};
  try {
    out.discrete_quotient = rayleigh_scalar(out.function, alpha, p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ZeroDenominator) throw;
  }
  return out;
}

}  // namespace hsl
