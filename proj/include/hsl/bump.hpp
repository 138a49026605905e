#pragma once

#include <vector>

#include "hsl/grids.hpp"

namespace hsl {

/// Boundary cap test functions u(x) = phi(|x - x0| / w), phi(s) = (1 - s^2)^2
/// on s < 1, centered at x0 = (1 - w) e_1. The support is the ball of radius
/// w touching the unit sphere at e_1, so u vanishes on the boundary.
double cap_profile(double s);
double cap_profile_derivative(double s);
/// Radial Laplacian of the profile in R^N at unit width: phi'' + (N-1) phi'/s.
double cap_profile_laplacian(double s, int N);

/// min(1/2, c / alpha); the width of the cap used at weight exponent alpha.
double default_bump_width(double alpha, double c = 2.0);

/// Integral of |x|^a over the sphere of radius rho about (1 - w) e_1.
double shell_weight_integral(int N, double a, double w, double rho);

/// Scalar quotient of the cap, computed by adaptive quadrature:
/// integral |grad u|^2 / (integral |x|^alpha |u|^{p+1})^{2/(p+1)}.
double cap_rayleigh_scalar(int N, double alpha, double p, double width);

/// Fourth-order system quotient of the cap with r = (q+1)/q.
double cap_rayleigh_system(int N, double alpha, double beta, double p, double q, double width);

struct BumpSweep {
  double width;
  double quotient;
  std::vector<double> widths;
  std::vector<double> quotients;
};

/// Minimum of the cap quotient over widths c/alpha, c in a geometric sweep.
BumpSweep bump_upper_scalar(int N, double alpha, double p);
BumpSweep bump_upper_system(int N, double alpha, double beta, double p, double q);

/// The cap sampled on a polar grid together with its exact and discrete
/// scalar quotients.
struct BoundaryBump {
  DiskFunction function;
  double width;
  double quotient;           ///< exact (quadrature) value
  double discrete_quotient;  ///< rayleigh_scalar of the sampled function
};

BoundaryBump boundary_bump(const DiskGrid& grid, double alpha, double p, double width);

}  // namespace hsl
