#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "hsl/errors.hpp"
#include "hsl/grids.hpp"

using namespace hsl;
using std::numbers::pi;

TEST_CASE("weighted integral of constants is exact") {
  for (int m : {3, 17, 256}) {
    auto one = RadialFunction::sample(RadialGrid(3, m), [](double) { return 1.0; });
    CHECK(weighted_integral(one, 0.0) == doctest::Approx(4 * pi / 3).epsilon(1e-12));
    CHECK(weighted_integral(one, 2.0) == doctest::Approx(4 * pi / 5).epsilon(1e-12));
    CHECK(weighted_integral(one, -2.0) == doctest::Approx(4 * pi).epsilon(1e-12));
    CHECK(weighted_integral(one, -2.999) == doctest::Approx(4 * pi / 0.001).epsilon(1e-12));
  }
  auto d = DiskFunction::sample(DiskGrid(20, 16), [](double, double) { return 1.0; });
  CHECK(weighted_integral(d, 0.0) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(weighted_integral(d, 3.0) == doctest::Approx(2 * pi / 5).epsilon(1e-12));
  auto one = RadialFunction::sample(RadialGrid(3, 8), [](double) { return 1.0; });
  CHECK_THROWS_AS(weighted_integral(one, -3.0), Error);
}

TEST_CASE("radial laplacian examples converge at second order in the interior") {
  auto interior_err = [](int N, int m, auto f, auto lap) {
    RadialGrid g(N, m);
    auto L = radial_laplacian(RadialFunction::sample(g, f));
    double e = 0;
    for (int i = 0; i < m - 1; ++i) e = std::max(e, std::abs(L.values[i] - lap(g.node(i))));
    return e;
  };
  auto f1 = [](double r) { return 1 - r * r; };
  CHECK(interior_err(3, 64, f1, [](double) { return -6.0; }) < 1e-10);
  auto f2 = [](double r) { return r * r; };
  // r^2 does not vanish at r=1; check away from the boundary cell.
  CHECK(interior_err(4, 64, f2, [](double) { return 8.0; }) < 1e-10);
  auto f3 = [](double r) { return std::sin(pi * r) / r; };
  auto l3 = [&](double r) { return -pi * pi * f3(r); };
  const double e1 = interior_err(3, 64, f3, l3), e2 = interior_err(3, 128, f3, l3);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
  CHECK_THROWS_AS(radial_laplacian(RadialFunction::zeros(RadialGrid(3, 2))), Error);
}

TEST_CASE("integration by parts closes") {
  RadialGrid g(3, 50);
  auto u = RadialFunction::sample(g, [](double r) { return std::cos(pi * r / 2) + r * r * (1 - r); });
  auto L = radial_laplacian(u);
  auto w = radial_cell_measures(g);
  double s = 0;
  for (int i = 0; i < g.cells(); ++i) s -= L.values[i] * u.values[i] * w[i];
  CHECK(s == doctest::Approx(radial_dirichlet_energy(u)).epsilon(1e-10));

  DiskGrid dg(24, 16);
  auto du = DiskFunction::sample(dg, [](double r, double t) {
    return (1 - r * r) * (1 + 0.3 * std::cos(t) + 0.1 * std::sin(3 * t));
  });
  auto dl = disk_laplacian(du);
  auto dw = dg.cell_weights(0.0);
  double ds = 0;
  for (int i = 0; i < dg.radial_cells(); ++i)
    for (int j = 0; j < dg.angular_cells(); ++j)
      ds -= dl.at(i, j) * du.at(i, j) * dw[i];
  CHECK(ds == doctest::Approx(disk_dirichlet_energy(du)).epsilon(1e-10));
}

TEST_CASE("disk energy examples") {
  auto e = [](int m) {
    DiskGrid g(m, 16);
    return disk_dirichlet_energy(DiskFunction::sample(g, [](double r, double) { return 1 - r * r; }));
  };
  const double e1 = std::abs(e(64) - 2 * pi), e2 = std::abs(e(128) - 2 * pi);
  CHECK(e1 < 2e-3);
  CHECK(e1 / e2 > 1.8);

  DiskGrid g(32, 16);
  auto radial = DiskFunction::sample(g, [](double r, double) { return 1 - r * r; });
  auto cosu = DiskFunction::sample(g, [](double r, double t) { return (1 - r * r) * std::cos(t); });
  CHECK(disk_dirichlet_energy(cosu) > 0.0);
  auto mixed = DiskFunction::sample(g, [](double r, double t) { return (1 - r * r) * (1 + std::cos(t)); });
  CHECK(disk_dirichlet_energy(mixed) > disk_dirichlet_energy(radial));

  auto rf = RadialFunction::sample(g.radial(), [](double r) { return std::cos(pi * r / 2); });
  auto df = DiskFunction::from_radial(rf, 16);
  CHECK(disk_dirichlet_energy(df) == doctest::Approx(radial_dirichlet_energy(rf)).epsilon(1e-10));

  // First Dirichlet eigenfunction J0(j r), eigenvalue j^2.
  const double j = 2.404825557695773;
  DiskGrid eg(128, 16);
  auto ef = DiskFunction::sample(eg, [&](double r, double) { return std::cyl_bessel_j(0.0, j * r); });
  double mass = 0;
  auto w = eg.cell_weights(0.0);
  for (int i = 0; i < 128; ++i)
    for (int t = 0; t < 16; ++t) mass += w[i] * ef.at(i, t) * ef.at(i, t);
  CHECK(disk_dirichlet_energy(ef) / mass == doctest::Approx(j * j).epsilon(0.01));
  CHECK_THROWS_AS(disk_laplacian(DiskFunction::zeros(DiskGrid(8, 4))), Error);
}

TEST_CASE("disk Poisson solver inverts the stiffness") {
  DiskGrid g(20, 12);
  auto u = DiskFunction::sample(g, [](double r, double t) { return std::exp(r) * std::cos(2 * t) + r; });
  auto b = disk_stiffness_apply(g, u.values);
  auto x = DiskPoissonSolver(g).solve(b);
  for (std::size_t k = 0; k < x.size(); ++k) CHECK(x[k] == doctest::Approx(u.values[k]).epsilon(1e-9));
}

TEST_CASE("radial lemma") {
  RadialGrid g(3, 200);
  auto lin = radial_lemma_check(RadialFunction::sample(g, [](double r) { return 1 - r; }));
  CHECK(lin.max_violation <= 0.0);
  auto z = radial_lemma_check(RadialFunction::zeros(g));
  CHECK(z.max_violation <= 0.0);
  CHECK(z.gradient_norm == 0.0);
  CHECK_THROWS_AS(radial_lemma_check(RadialFunction::zeros(RadialGrid(2, 10))), Error);
}

TEST_CASE("text format round trip is bit identical") {
  auto u = RadialFunction::sample(RadialGrid(4, 33), [](double r) { return std::exp(-r) / 3.0; });
  std::stringstream ss;
  write_function(ss, u);
  auto back = std::get<RadialFunction>(read_function(ss));
  CHECK(back.grid == u.grid);
  CHECK(back.values == u.values);

  auto d = DiskFunction::sample(DiskGrid(5, 8), [](double r, double t) { return r * std::sin(t) / 7.0; });
  std::stringstream s2;
  write_function(s2, d);
  auto db = std::get<DiskFunction>(read_function(s2));
  CHECK(db.values == d.values);
}
