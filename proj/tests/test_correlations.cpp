#include <cmath>
#include <random>

#include "doctest.h"
#include "dkt/correlations.hpp"

using namespace dkt;

namespace {

Rho2 pure(const Eigen::Vector4cd& v) {
  const Eigen::Vector4cd n = v.normalized();
  return n * n.adjoint();
}

Rho2 werner(double p) {
  Eigen::Vector4cd singlet(0, 1, -1, 0);
  return p * pure(singlet) + (1 - p) * Rho2::Identity() / 4.0;
}

double werner_discord(double p) {
  auto xl = [](double x) { return x > 0 ? x * std::log2(x) : 0.0; };
  return xl(1 - p) / 4 - xl(1 + p) / 2 + xl(1 + 3 * p) / 4;
}

Rho2 random_mixed(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix4cd a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = cplx(g(rng), g(rng));
  Rho2 r = a * a.adjoint();
  return r / r.trace().real();
}

}  // namespace

TEST_CASE("density matrix checks") {
  Rho1 bad = Rho1::Identity();
  CHECK_THROWS_AS(check_density_matrix(bad), DomainError);
  bad = Rho1::Identity() / 2.0;
  bad(0, 1) = 0.1;
  CHECK_THROWS_AS(check_density_matrix(bad), DomainError);
  Rho1 tiny_negative;
  tiny_negative << 1.0 + 1e-11, 0, 0, -1e-11;
  CHECK(clipped_spectrum(tiny_negative).minCoeff() == 0.0);
}

TEST_CASE("entropies") {
  const Rho1 mixed = Rho1::Identity() / 2.0;
  CHECK(linear_entropy(mixed) == doctest::Approx(0.5));
  CHECK(von_neumann_entropy(mixed) == doctest::Approx(1.0));
  Rho1 pure1;
  pure1 << 1, 0, 0, 0;
  CHECK(linear_entropy(pure1) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy(pure1) == doctest::Approx(0.0));
}

TEST_CASE("concurrence") {
  CHECK(concurrence(pure(Eigen::Vector4cd(1, 0, 0, 1))) == doctest::Approx(1.0));
  CHECK(concurrence(pure(Eigen::Vector4cd(1, 0, 0, 0))) == doctest::Approx(0.0));
  const double a = 0.3;
  CHECK(concurrence(pure(Eigen::Vector4cd(std::cos(a), 0, 0, std::sin(a)))) == doctest::Approx(std::sin(2 * a)));
  for (double p : {0.1, 0.5, 0.9}) {
    CHECK(concurrence(werner(p)) == doctest::Approx(std::max(0.0, (3 * p - 1) / 2)).epsilon(1e-9));
  }
}

TEST_CASE("discord of Werner states") {
  for (double p : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    const DiscordResult d = quantum_discord(werner(p));
    CHECK(d.discord == doctest::Approx(werner_discord(p)).epsilon(1e-6));
  }
}

TEST_CASE("discord of pure states is the entanglement entropy") {
  const double a = 0.4;
  const DiscordResult d = quantum_discord(pure(Eigen::Vector4cd(std::cos(a), 0, 0, std::sin(a))));
  const double c2 = std::pow(std::cos(a), 2), s2 = std::pow(std::sin(a), 2);
  CHECK(d.discord == doctest::Approx(-c2 * std::log2(c2) - s2 * std::log2(s2)).epsilon(1e-6));
  CHECK(d.mutual_info == doctest::Approx(2 * d.discord).epsilon(1e-6));
}

TEST_CASE("discord is non-negative and bounded by mutual information") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 25; ++i) {
    const Rho2 r = random_mixed(rng);
    const DiscordResult d = quantum_discord(r);
    CHECK(d.discord >= -1e-6);
    CHECK(d.classical_corr <= d.mutual_info + 1e-9);
    CHECK(classical_correlation(r, d.theta, d.phi) == doctest::Approx(d.classical_corr).epsilon(1e-12));
  }
}

TEST_CASE("qubit fidelity") {
  Rho1 a;
  a << 0.7, cplx(0.1, 0.2), cplx(0.1, -0.2), 0.3;
  CHECK(fidelity_qubit(a, a) == doctest::Approx(1.0));
  Rho1 up, down;
  up << 1, 0, 0, 0;
  down << 0, 0, 0, 1;
  CHECK(fidelity_qubit(up, down) == doctest::Approx(0.0));
  CHECK(fidelity_qubit(up, Rho1::Identity() / 2.0) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("partial traces pick the right factor") {
  Eigen::Vector4cd v(0, 0, 1, 0);  // |1>|0>
  const Rho2 r = pure(v);
  CHECK(partial_trace_second(r)(1, 1).real() == doctest::Approx(1.0));
  CHECK(partial_trace_first(r)(0, 0).real() == doctest::Approx(1.0));
}
