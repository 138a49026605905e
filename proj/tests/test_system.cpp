#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "hsl/errors.hpp"
#include "hsl/system_ground_state.hpp"

using namespace hsl;
using std::numbers::pi;

namespace {

RadialFunction parabola(int m) {
  return RadialFunction::sample(RadialGrid(3, m), [](double r) { return 1 - r * r; });
}

SystemSpec sys(int N, double alpha, double beta, double p, double q) {
  return SystemSpec(ProblemSpec{N, alpha, beta, p, q});
}

}  // namespace

TEST_CASE("system spec") {
  CHECK(sys(3, 0, 0, 3, 2).r == doctest::Approx(1.5));
  CHECK(sys(3, 0, 0, 1, 1).r == 2.0);
  CHECK_THROWS_AS(sys(3, 0, 0, 3, 0.5), Error);
  CHECK_THROWS_AS(sys(1, 0, 0, 3, 2), Error);
}

TEST_CASE("quotient of 1-r^2 with r = 2") {
  // |Δu|^2 = 36 over the ball is 48pi; the denominator is 32pi/105.
  const auto spec = sys(3, 0, 0, 1, 1);
  const double e512 = std::abs(rayleigh_system(parabola(512), spec) - 157.5);
  const double e1024 = std::abs(rayleigh_system(parabola(1024), spec) - 157.5);
  CHECK(e1024 < 0.01 * 157.5);
  CHECK(e1024 < e512);
}

TEST_CASE("system quotient homogeneity") {
  auto u = RadialFunction::sample(RadialGrid(3, 96), [](double r) { return std::cos(0.5 * pi * r); });
  for (auto spec : {sys(3, 0, 0, 3, 2), sys(3, 2, -1, 2, 3), sys(3, -1, -1, 2, 2)}) {
    for (double eps : {0.0, 1e-3}) {
      const double base = rayleigh_system(u, spec, eps);
      for (double c : {3.0, -0.37, 41.0}) {
        auto v = u;
        for (auto& x : v.values) x *= c;
        CHECK(rayleigh_system(v, spec, eps) == doctest::Approx(base).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(rayleigh_system(RadialFunction::zeros(RadialGrid(3, 8)), sys(3, 0, 0, 3, 2)), Error);
}

TEST_CASE("system gradient matches central differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  RadialGrid g(3, 20);
  for (int k = 0; k < 12; ++k) {
    const auto spec = sys(3, 3 * U(rng) - 1, 2 * U(rng) - 1, 1.5 + 2 * U(rng), 1.2 + 2 * U(rng));
    const double eps = k % 2 ? 1e-2 : 0.0;
    auto u = RadialFunction::sample(g, [&](double r) { return (1 - r * r) * (1 + 0.3 * U(rng)); });
    std::vector<double> dir(u.values.size());
    for (auto& x : dir) x = U(rng) - 0.5;
    const auto grad = rayleigh_system_gradient(u, spec, eps);
    double dd = 0;
    for (std::size_t i = 0; i < dir.size(); ++i) dd += grad[i] * dir[i];
    const double h = 1e-6;
    auto up = u, um = u;
    for (std::size_t i = 0; i < dir.size(); ++i) {
      up.values[i] += h * dir[i];
      um.values[i] -= h * dir[i];
    }
    const double fd = (rayleigh_system(up, spec, eps) - rayleigh_system(um, spec, eps)) / (2 * h);
    CHECK(dd == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("r close to 1 stays finite and tracks the analytic value") {
  // u = 1-r^2, p = 3: numerator 6^r * 4pi/3, denominator 4pi B(3/2, 5)/2.
  const double D = 4 * pi * std::tgamma(1.5) * std::tgamma(5.0) / (2 * std::tgamma(6.5));
  auto exact = [&](double r) { return std::pow(6.0, r) * 4 * pi / 3 / std::pow(D, r / 4); };
  const auto u = parabola(1024);
  for (double q : {100.0, 1000.0}) {
    const auto spec = sys(3, 0, 0, 3, q);
    const double v = rayleigh_system(u, spec, 1e-8);
    CHECK(std::isfinite(v));
    CHECK(v == doctest::Approx(exact(spec.r)).epsilon(0.01));
  }
  const double d = rayleigh_system(u, sys(3, 0, 0, 3, 100), 1e-8) / rayleigh_system(u, sys(3, 0, 0, 3, 1000), 1e-8);
  CHECK(d == doctest::Approx(exact(1.01) / exact(1.001)).epsilon(1e-3));
}

TEST_CASE("linear case level is pi^4") {
  SolverOptions o;
  o.tol = 1e-10;
  const auto gs = minimize_system_radial(sys(3, 0, 0, 1, 1), RadialGrid(3, 512), o);
  CHECK(gs.converged);
  CHECK(gs.level == doctest::Approx(std::pow(pi, 4)).epsilon(0.01));
}

TEST_CASE("linear case matches a dense generalized eigensolver") {
  // Independent oracle: smallest eigenpair of K M^-1 K x = mu W x.
  const int m = 128;
  RadialGrid g(3, m);
  const auto K = radial_stiffness(g);
  const auto M = radial_cell_measures(g);
  const auto W = g.cell_weights(0.0);
  Eigen::MatrixXd Kd = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    Kd(i, i) = K.diag[i];
    if (i + 1 < m) Kd(i, i + 1) = Kd(i + 1, i) = K.off[i];
  }
  Eigen::VectorXd Minv(m), Wd(m);
  for (int i = 0; i < m; ++i) {
    Minv[i] = 1.0 / M[i];
    Wd[i] = W[i];
  }
  const Eigen::MatrixXd A = Kd * Minv.asDiagonal() * Kd;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::MatrixXd(Wd.asDiagonal()));
  const double mu = es.eigenvalues()[0];
  Eigen::VectorXd x = es.eigenvectors().col(0);
  if (x.sum() < 0) x = -x;

  SolverOptions o;
  o.tol = 1e-10;
  const auto gs = minimize_system_radial(sys(3, 0, 0, 1, 1), g, o);
  CHECK(gs.level == doctest::Approx(mu).epsilon(1e-6));
  // Compare shapes after scaling both to unit max.
  const double xs = x.maxCoeff();
  double us = 0;
  for (double v : gs.u.values) us = std::max(us, v);
  double err = 0;
  for (int i = 0; i < m; ++i) err = std::max(err, std::abs(gs.u.values[i] / us - x[i] / xs));
  CHECK(err < 1e-6);
}

TEST_CASE("superlinear ground state") {
  SolverOptions o;
  o.tol = 1e-10;
  const auto spec = sys(3, 0, 0, 3, 2);
  const auto gs = minimize_system_radial(spec, RadialGrid(3, 256), o);
  CHECK(gs.converged);
  CHECK(gs.level > 0);
  for (std::size_t i = 0; i + 1 < gs.u.values.size(); ++i) {
    CHECK(gs.u.values[i + 1] <= gs.u.values[i] + 1e-10);
    CHECK(gs.v.values[i + 1] <= gs.v.values[i] + 1e-10);
  }
  CHECK(gs.u.values.back() >= 0);
  CHECK(gs.v.values.back() >= 0);
  CHECK(gs.residual <= 1e-4);
  CHECK(system_residual(gs.u, gs.v, spec, gs.lambda, ResidualNorm::Max) <= 1e-4);
  CHECK(gs.lambda == 1.0);
}

TEST_CASE("hardy weights give a positive level") {
  SolverOptions o;
  o.tol = 1e-10;
  const auto gs = minimize_system_radial(sys(3, -1, -1, 2, 2), RadialGrid(3, 256), o);
  CHECK(gs.converged);
  CHECK(gs.level > 0);
  CHECK(std::isfinite(gs.level));
  CHECK(gs.residual <= 1e-4);
}

TEST_CASE("hypothesis checks") {
  CHECK_THROWS_AS(minimize_system_radial(sys(3, 0, 0, 5, 5), RadialGrid(3, 64)), Error);
  CHECK_THROWS_AS(minimize_system_radial(sys(3, 0, 0, 7, 7), RadialGrid(3, 64)), Error);
  // beta > 0 needs q > beta / N.
  CHECK_THROWS_AS(minimize_system_radial(sys(3, 20, 7.5, 1.5, 2), RadialGrid(3, 64)), Error);
  try {
    minimize_system_radial(sys(3, 0, 0, 7, 7), RadialGrid(3, 64));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisViolation);
  }
}

TEST_CASE("recover_v examples") {
  const auto u = parabola(256);
  const int m = 256;
  auto v = recover_v(u, sys(3, 0, 0, 3, 2));
  for (int i = 0; i + 1 < m; ++i) CHECK(v.values[i] == doctest::Approx(std::sqrt(6.0)).epsilon(1e-10));
  // The weight r is averaged over each cell against r^2 dr.
  v = recover_v(u, sys(3, 0, -2, 3, 2));
  for (int i = 0; i + 1 < m; ++i) {
    const double a = u.grid.face(i), b = u.grid.face(i + 1);
    const double avg = 0.75 * (std::pow(b, 4) - std::pow(a, 4)) / (std::pow(b, 3) - std::pow(a, 3));
    CHECK(v.values[i] == doctest::Approx(std::sqrt(6.0) * avg).epsilon(1e-10));
    if (u.grid.node(i) > 0.1)
      CHECK(v.values[i] == doctest::Approx(std::sqrt(6.0) * u.grid.node(i)).epsilon(1e-4));
  }
  v = recover_v(u, sys(3, 0, 0, 1, 1));
  const auto L = radial_laplacian(u);
  for (int i = 0; i < m; ++i) CHECK(v.values[i] == doctest::Approx(-L.values[i]).epsilon(1e-12));
  const auto w = RadialFunction::sample(RadialGrid(3, 64), [](double r) { return r * r - 1; });
  CHECK_THROWS_AS(recover_v(w, sys(3, 0, 0, 3, 2)), Error);
}

TEST_CASE("pohozaev residual") {
  const auto spec = sys(3, 0, 0, 3, 2);
  const auto z = RadialFunction::zeros(RadialGrid(3, 64));
  const auto rep = pohozaev_residual(z, z, spec);
  CHECK(rep.residual == 0.0);
  CHECK(rep.branch == "henon");
  CHECK(rep.gap == doctest::Approx(0.75));

  const auto crit = pohozaev_residual(z, z, sys(3, 0, 0, 5, 5));
  CHECK(crit.branch == "critical");
  CHECK(std::abs(crit.gap) <= 1e-12);
  CHECK(pohozaev_residual(z, z, sys(3, -1, -1, 2, 2)).branch == "hardy");

  const auto u = parabola(64);
  try {
    pohozaev_residual(u, u, spec);
    FAIL("expected NotASolution");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotASolution);
  }

  SolverOptions o;
  o.tol = 1e-10;
  const auto a = minimize_system_radial(spec, RadialGrid(3, 128), o);
  const auto b = minimize_system_radial(spec, RadialGrid(3, 256), o);
  CHECK(b.pohozaev_residual < a.pohozaev_residual);
  const auto r = pohozaev_residual(b.u, b.v, spec);
  CHECK(r.residual == doctest::Approx(b.pohozaev_residual));
  CHECK(r.boundary_term > 0);
}

TEST_CASE("symmetry certificate at zero weight") {
  const auto spec = sys(3, 0, 0, 3, 2);
  const auto c = system_symmetry_certificate(spec, RadialGrid(3, 256));
  CHECK_FALSE(c.breaks);
  CHECK(c.bump_upper > c.rad_level);
  CHECK_THROWS_AS(system_symmetry_certificate(sys(3, -1, 0, 3, 2), RadialGrid(3, 64)), Error);
}
