#include <cmath>
#include <random>

#include "doctest.h"
#include "dkt/analytic.hpp"
#include "dkt/correlations.hpp"
#include "dkt/quantum.hpp"

using namespace dkt;

namespace {

std::vector<double> numeric_series(int n_qubits, const KickParams& kick, double th, double ph, int n_max) {
  const SpinOperators ops = build_spin_operators_2j(n_qubits);
  std::vector<double> out;
  for_each_kick(coherent_state(ops.j, th, ph), build_collective_floquet(ops, kick), n_max,
                [&](int, const CVector& psi) { out.push_back(linear_entropy(rdm_one(psi, ops))); });
  return out;
}

}  // namespace

TEST_CASE("closed forms agree with Floquet evolution") {
  for (int n = 2; n <= 4; ++n) {
    for (auto [kr, kt] : {std::pair{0.7, -0.3}, {1.9, 1.4}, {3.0, 0.0}}) {
      const KickParams kick = from_rotated(kr, kt);
      const auto num = numeric_series(n, kick, 0.9, 2.1, 150);
      const auto cf = closed_form_series(n, kick, 0.9, 2.1, 150);
      for (std::size_t t = 0; t < num.size(); ++t) CHECK(std::abs(num[t] - cf[t]) < 1e-10);
    }
  }
  CHECK_THROWS_AS(closed_form_linear_entropy({5, from_rotated(1, 0), 0, 0, 3}), DomainError);
  CHECK_THROWS_AS(closed_form_linear_entropy({2, from_rotated(1, 0), 0, 0, -1}), DomainError);
}

TEST_CASE("sin ratio continues through zeros of sin") {
  CHECK(sin_ratio(5, 0.3) == doctest::Approx(std::sin(1.5) / std::sin(0.3)));
  CHECK(sin_ratio(5, 0.0) == doctest::Approx(5.0));
  CHECK(sin_ratio(4, kPi) == doctest::Approx(-4.0));
}

TEST_CASE("block angle") {
  CHECK(std::cos(block_angle(3, 0.9)) == doctest::Approx(0.5 * std::sin(0.6)));
  CHECK(std::cos(block_angle(4, 0.9)) == doctest::Approx(0.5 * std::sin(0.9)));
  CHECK_THROWS_AS(block_angle(2, 1.0), DomainError);
}

TEST_CASE("phase quadrature equals the long empirical mean") {
  for (int n = 2; n <= 4; ++n) {
    const KickParams kick = from_rotated(1.1, 0.45);
    const auto num = numeric_series(n, kick, 0.6, -1.0, 60000);
    const double empirical = long_time_average(num, 60000);
    CHECK(phase_averaged_linear_entropy(n, kick, 0.6, -1.0) == doctest::Approx(empirical).epsilon(5e-3));
  }
}

TEST_CASE("corrected averages match the quadrature") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (int trial = 0; trial < 6; ++trial) {
    const KickParams kick = from_rotated(u(rng), u(rng));
    const double th = 0.5 + 0.3 * trial, ph = u(rng);
    CHECK(closed_form_time_average(2, AverageCase::general, kick, th, ph).value ==
          doctest::Approx(phase_averaged_linear_entropy(2, kick, th, ph)).epsilon(1e-10));
    for (int n = 2; n <= 4; ++n) {
      CHECK(closed_form_time_average(n, AverageCase::polar, kick).value ==
            doctest::Approx(phase_averaged_linear_entropy(n, kick, 0, 0)).epsilon(1e-10));
      CHECK(closed_form_time_average(n, AverageCase::equatorial, kick).value ==
            doctest::Approx(phase_averaged_linear_entropy(n, kick, kPi / 2, -kPi / 2)).epsilon(1e-10));
    }
  }
}

TEST_CASE("published forms are reported next to the corrected ones") {
  const KickParams kick = from_rotated(1.0, 0.5);
  const TimeAverage polar3 = closed_form_time_average(3, AverageCase::polar, kick);
  REQUIRE(polar3.printed.has_value());
  CHECK(*polar3.printed == doctest::Approx(published_average_three_qubit_polar(kick)));
  CHECK(polar3.discrepancy);
  CHECK_FALSE(polar3.note.empty());

  const TimeAverage polar4 = closed_form_time_average(4, AverageCase::polar, kick);
  CHECK_FALSE(polar4.discrepancy);

  const TimeAverage eq2 = closed_form_time_average(2, AverageCase::equatorial, kick);
  CHECK(eq2.value == doctest::Approx(0.25 * std::pow(std::sin(0.5), 2)));
  CHECK(*eq2.printed == doctest::Approx(0.25 * std::pow(std::sin(0.25), 2)));
  CHECK(eq2.discrepancy);

  CHECK(closed_form_time_average(2, AverageCase::polar, kick).value == doctest::Approx(0.25));
  CHECK(published_average_four_qubit_polar(from_rotated(kPi / 2, kPi / 2)) == doctest::Approx(3.0 / 8.0));
  CHECK(published_average_four_qubit_polar(from_rotated(kPi, 0.0)) == doctest::Approx(11.0 / 32.0));
}

TEST_CASE("resonance flag") {
  CHECK(closed_form_time_average(3, AverageCase::polar, from_rotated(0.0, 0.0)).resonant);
  CHECK(closed_form_time_average(4, AverageCase::polar, from_rotated(kPi, 0.0)).resonant);
  CHECK_FALSE(closed_form_time_average(3, AverageCase::polar, from_rotated(1.0, 0.5)).resonant);
}

TEST_CASE("rational approximation") {
  const auto a = rational_approx(9.0 / 20.0);
  REQUIRE(a.has_value());
  CHECK(a->numerator == 9);
  CHECK(a->denominator == 20);
  CHECK(a->value() == doctest::Approx(0.45 * kPi));
  CHECK_FALSE(rational_approx(1.0 / std::sqrt(2.0), 1000, 1e-12).has_value());
  const auto b = rational_approx(-0.5);
  REQUIRE(b.has_value());
  CHECK(b->numerator == -1);
  CHECK(b->denominator == 2);
}

TEST_CASE("periodicity predicate witnesses") {
  const PeriodicityVerdict three = periodicity_predicate(3, 3 * kPi / 4);
  CHECK(three.periodic);
  REQUIRE(three.a.has_value());
  CHECK(three.a->numerator == 1);
  CHECK(three.a->denominator == 3);

  const double kr = 1.5 * kPi - 1.5 * std::asin(2 * std::sin(kPi / 20));
  const PeriodicityVerdict nine = periodicity_predicate(3, kr);
  CHECK(nine.periodic);
  CHECK(nine.a->numerator == 9);
  CHECK(nine.a->denominator == 20);

  const PeriodicityVerdict four = periodicity_predicate(4, kPi);
  CHECK(four.periodic);
  CHECK(four.a->denominator == 2);
  CHECK(four.b->denominator == 4);

  CHECK_FALSE(periodicity_predicate(3, 1.0).periodic);
  CHECK(periodicity_predicate(2, RationalAngle{3, 7}).periodic);
  CHECK_THROWS_AS(periodicity_predicate(3, RationalAngle{1, 0}), DomainError);
}

TEST_CASE("period detection") {
  CHECK(detect_period({1, 2, 3, 1, 2, 3, 1, 2, 3, 1}, 1e-12) == 3);
  CHECK_FALSE(detect_period({1, 2, 3, 4, 5, 6}, 1e-12).has_value());
  auto series = closed_form_series(4, from_rotated(kPi / 2, 0.2), 0, 0, 200);
  CHECK(detect_period(series, 1e-10) == 24);
  series = closed_form_series(3, from_rotated(3 * kPi / 4, 0.0), kPi / 2, -kPi / 2, 200);
  CHECK(detect_period(series, 1e-10) == 3);
}
