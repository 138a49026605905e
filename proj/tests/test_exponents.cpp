#include <doctest.h>

#include <random>

#include "hsl/errors.hpp"
#include "hsl/exponents.hpp"

using namespace hsl;

namespace {
ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}
}  // namespace

TEST_CASE("critical exponents") {
  CHECK(critical_exponent(3, 1) == doctest::Approx(6.0));
  CHECK(critical_exponent(4, 1) == doctest::Approx(4.0));
  CHECK(critical_exponent(6, 2) == doctest::Approx(6.0));
  CHECK(code_of([] { critical_exponent(2, 1); }) == ErrorCode::DimensionTooSmall);
  CHECK(code_of([] { critical_exponent(4, 2); }) == ErrorCode::DimensionTooSmall);

  CHECK(ni_exponent(3, 2.0) == doctest::Approx(10.0));
  CHECK(ni_exponent(4, 1.0) == doctest::Approx(5.0));
  for (int N = 3; N < 9; ++N) CHECK(ni_exponent(N, 0.0) == critical_exponent(N, 1));
  CHECK(code_of([] { ni_exponent(3, -3.0); }) == ErrorCode::WeightOutOfRange);
}

TEST_CASE("hyperbola gap values") {
  CHECK(hyperbola_gap({3, 0, 0, 2, 2}) == doctest::Approx(1.0));
  CHECK(hyperbola_gap({3, 0, 0, 5, 5}) == doctest::Approx(0.0));
  CHECK(hyperbola_gap({3, 3, 0, 2, 2}) == doctest::Approx(2.0));
  CHECK(hyperbola_gap({3, 0, 0, 3, 2}) == doctest::Approx(0.75));
}

TEST_CASE("classification examples") {
  auto hardy = classify_point({3, -1, -1, 2, 2}, 0.0);
  CHECK(hardy.side == Side::Below);
  CHECK(hardy.hypotheses.at("existence.hardy_case").holds);

  auto on = classify_point({3, 0, 0, 5, 5});
  CHECK(on.side == Side::On);
  CHECK(on.hypotheses.at("nonexistence.on_or_above").holds);

  auto henon = classify_point({3, 10, 0, 3, 2});
  CHECK(henon.hypotheses.at("henon.symmetry_breaking").holds);
  CHECK(henon.hypotheses.at("henon.radial_existence").holds);

  auto bad = classify_point({3, 10, 0, 1.2, 1.2});
  CHECK_FALSE(bad.hypotheses.at("henon.symmetry_breaking").holds);
  CHECK(bad.hypotheses.at("henon.symmetry_breaking").reason.find("p > N/((N-1)q-1)") !=
        std::string::npos);
}

TEST_CASE("gap strictly decreasing in p and q, M-gap at zero weights") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(1.01, 10.0);
  for (int k = 0; k < 200; ++k) {
    ProblemSpec s{3 + k % 5, U(rng) - 3, U(rng) - 3, U(rng), U(rng)};
    auto s2 = s;
    s2.p += 0.1;
    CHECK(hyperbola_gap(s2) < hyperbola_gap(s));
    s2 = s;
    s2.q += 0.1;
    CHECK(hyperbola_gap(s2) < hyperbola_gap(s));
    s.alpha = s.beta = 0;
    CHECK(classify_point(s).gap == m_hyperbola_gap(s));
  }
}

TEST_CASE("theoretical slopes") {
  auto s = theoretical_slopes(2, 3.0, 2.0);
  CHECK(s.scalar_rad == doctest::Approx(1.5));
  CHECK(s.scalar_upper == doctest::Approx(1.0));
  auto t = theoretical_slopes(3, 3.0, 2.0);
  CHECK(t.system_rad_lower == doctest::Approx(1.875));
  CHECK(t.system_upper == doctest::Approx(1.125));
  auto e = theoretical_slopes(3, 1.0, 2.0);
  CHECK(e.scalar_rad == doctest::Approx(e.scalar_upper));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(1.0, 8.0);
  for (int k = 0; k < 500; ++k) {
    const int N = 2 + k % 6;
    const double p = U(rng), q = U(rng);
    auto sl = theoretical_slopes(N, p, q);
    CHECK((sl.scalar_rad > sl.scalar_upper) == (p > 1.0));
    CHECK((sl.system_rad_lower > sl.system_upper) == (p > N / ((N - 1) * q - 1)));
  }
}

TEST_CASE("spec validation") {
  CHECK(code_of([] { ProblemSpec{3, 0, 0, 0.5, 2}.validate(); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { ProblemSpec{1, 0, 0, 2, 2}.validate(); }) == ErrorCode::DimensionTooSmall);
  CHECK(code_of([] { ProblemSpec{3, -3, 0, 2, 2}.validate(); }) == ErrorCode::WeightOutOfRange);
  CHECK_NOTHROW(ProblemSpec{3, 0, 0, 1, 1}.validate(true));
}
