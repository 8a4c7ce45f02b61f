#include <cmath>
#include <random>

#include "doctest.h"
#include "dkt/classical.hpp"

using namespace dkt;

namespace {

std::vector<PhasePoint> random_points(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PhasePoint> out;
  for (int i = 0; i < n; ++i) out.push_back(from_angles(std::acos(2 * u(rng) - 1), 2 * kPi * u(rng) - kPi));
  return out;
}

int nontrivial_count(double s) {
  int n = 0;
  for (const auto& f : find_fixed_points(transform_params(s / 2, s / 2))) n += f.branch != Branch::trivial;
  return n;
}

}  // namespace

TEST_CASE("angles round trip") {
  const PhasePoint p = from_angles(1.1, -2.3);
  CHECK(p.norm() == doctest::Approx(1.0));
  const auto [t, f] = to_angles(p);
  CHECK(t == doctest::Approx(1.1));
  CHECK(f == doctest::Approx(-2.3));
}

TEST_CASE("map preserves the sphere") {
  const KickParams kick = transform_params(3.7, -1.2);
  for (const auto& p : random_points(200, 1)) CHECK(std::abs(map_step(p, kick).squaredNorm() - 1.0) < 1e-12);
  PhasePoint p = from_angles(0.4, 0.9);
  for (int i = 0; i < 1000000; ++i) p = map_step(p, kick);
  CHECK(std::abs(p.norm() - 1.0) < 1e-9);
}

TEST_CASE("tangent matrix matches finite differences on the tangent plane") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const double h = 1e-6;
  for (const auto& p : random_points(300, 2)) {
    const KickParams kick = transform_params(u(rng), u(rng));
    const Mat3 m = tangent_matrix(p, kick);
    const Vec3 e1 = p.unitOrthogonal();
    for (const Vec3& v : {e1, Vec3(p.cross(e1))}) {
      const Vec3 fd = (map_step((p + h * v).normalized(), kick) - map_step((p - h * v).normalized(), kick)) / (2 * h);
      CHECK((m * v - fd).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("nontrivial fixed points appear at k + k' = 2") {
  CHECK(nontrivial_count(1.5) == 0);
  CHECK(nontrivial_count(1.9) == 0);
  CHECK(nontrivial_count(2.05) == 2);
  CHECK(nontrivial_count(3.0) == 2);
}

TEST_CASE("fixed points carry a unit multiplier and pair under Ry") {
  for (auto [k, kp] : {std::pair{1.5, 1.5}, {2.0, 1.2}, {0.5, 2.9}, {3.0, -0.4}}) {
    const KickParams kick = transform_params(k, kp);
    const auto fps = find_fixed_points(kick);
    REQUIRE(fps.size() >= 2);
    for (const auto& f : fps) {
      CHECK((map_step(f.point, kick) - f.point).norm() < 1e-9);
      CHECK(std::abs(f.multipliers[0] - 1.0) < 1e-8);
    }
    for (std::size_t i = 0; i + 1 < fps.size(); ++i) {
      if (fps[i].branch == Branch::nontrivial_upper) {
        CHECK((fps[i + 1].point - ry_pi(fps[i].point)).norm() < 1e-9);
      }
    }
  }
}

TEST_CASE("pole stability follows 2 kr") {
  const auto stable = classify_fixed_point(PhasePoint(0, 1, 0), from_rotated(0.5, 0.3));
  CHECK(stable.stable);
  CHECK(stable.criterion == doctest::Approx(1.0));
  const auto unstable = classify_fixed_point(PhasePoint(0, 1, 0), from_rotated(1.5, 0.0));
  CHECK_FALSE(unstable.stable);
  const auto tie = classify_fixed_point(PhasePoint(0, 1, 0), from_rotated(1.0, 0.0));
  CHECK(tie.marginal);
  CHECK_FALSE(tie.stable);
  CHECK_THROWS_AS(classify_fixed_point(PhasePoint(1, 0, 0), from_rotated(1.0, 0.0)), DomainError);
}

TEST_CASE("nontrivial pair loses stability past sqrt(2) pi") {
  auto upper = [](double s) {
    for (const auto& f : find_fixed_points(transform_params(s / 2, s / 2))) {
      if (f.branch == Branch::nontrivial_upper) return f;
    }
    FAIL("no nontrivial point");
    return FixedPointRecord{};
  };
  CHECK(upper(3.0).stable);
  CHECK(upper(4.0).stable);
  CHECK_FALSE(upper(4.6).stable);
}

TEST_CASE("period-2 orbit") {
  const KickParams kick = transform_params(2.3, 2.3);
  const auto [a, b] = period2_orbit(kick);
  CHECK((map_step(a, kick) - b).norm() < 1e-9);
  CHECK((map_step(b, kick) - a).norm() < 1e-9);
  CHECK((a - b).norm() > 0.1);
  const KickParams twisted = transform_params(3.0, 1.6);
  const auto [c, d] = period2_orbit(twisted);
  CHECK((map_step(map_step(c, twisted), twisted) - c).norm() < 1e-9);
  CHECK((map_step(d, twisted) - c).norm() < 1e-9);
  CHECK_THROWS_AS(period2_orbit(transform_params(2.0, 2.0)), DomainError);
}

TEST_CASE("equatorial four-cycle") {
  const KickParams kick = transform_params(1.0, 1.0);
  PhasePoint p(0, 0, 1);
  for (int i = 0; i < 4; ++i) p = map_step(p, kick);
  CHECK((p - PhasePoint(0, 0, 1)).norm() < 1e-12);
  CHECK(period4_stable(transform_params(0.2, 0.2)));
  CHECK(period4_stable(transform_params(1.0, 1.0)));
  CHECK_FALSE(period4_stable(transform_params(2.0, 2.0)));
  for (double s : {0.7, 2.0, 3.3, 4.0}) {
    const double expect = s * s * std::pow(std::sin(s), 2) + 2 * s * std::sin(2 * s) + 2 * std::cos(2 * s);
    CHECK(period4_monodromy_trace(transform_params(s / 2, s / 2)) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("symmetry relations") {
  const auto pts = random_points(200, 5);
  for (auto [k, kp] : {std::pair{1.0, 2.0}, {-3.0, 0.4}, {5.5, -5.5}}) {
    const SymmetryResiduals r = symmetry_residuals(transform_params(k, kp), pts);
    CHECK(r.ry_commutes <= 1e-12);
    CHECK(r.rx_relation <= 1e-12);
    CHECK(r.f2_rx <= 1e-12);
  }
  for (const auto& p : pts) {
    CHECK((rx_pi(rx_pi(p)) - p).norm() == 0.0);
    CHECK((ry_pi(ry_pi(p)) - p).norm() == 0.0);
  }
}

TEST_CASE("opposite-sign kicks are conjugate under inversion") {
  const KickParams a = transform_params(1.3, 2.2);
  const KickParams b = transform_params(-1.3, -2.2);
  PhasePoint p = from_angles(0.8, 0.3);
  PhasePoint q = -p;
  for (int i = 0; i < 50; ++i) {
    p = map_step(p, a);
    q = map_step(q, b);
    CHECK((q + p).norm() < 1e-9);
  }
}

TEST_CASE("Lyapunov exponent basics") {
  const PhasePoint p = from_angles(1.0, 0.5);
  CHECK(largest_lyapunov(p, transform_params(0.0, 0.0), 2000) <= 1e-6);
  const KickParams chaotic = transform_params(6.0, 6.0);
  const double l = largest_lyapunov(p, chaotic, 20000);
  const double lr = largest_lyapunov(ry_pi(p), chaotic, 20000);
  CHECK(l > 0.5);
  CHECK(std::abs(l - lr) <= 0.02 * l);
  const StretchRates r = stretch_rates(p, chaotic, 3000);
  CHECK(r.ks == doctest::Approx(r.lyapunov / std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(largest_lyapunov(p, chaotic, 99), DomainError);
  CHECK_THROWS_AS(ks_entropy(p, chaotic, 999), DomainError);
}

TEST_CASE("uniform area grid and phase averages") {
  const auto grid = uniform_area_grid(60);
  CHECK(grid.size() == 3600);
  double zsum = 0.0;
  for (const auto& p : grid) zsum += p.z();
  CHECK(std::abs(zsum) < 1e-9);
  const KickParams kick = transform_params(3.0, 0.5);
  const double one = phase_averaged_chaos(kick, 50, 200, Indicator::lle, 1);
  const double many = phase_averaged_chaos(kick, 50, 200, Indicator::lle, 4);
  CHECK(one == many);
  CHECK_THROWS_AS(phase_averaged_chaos(kick, 49, 200, Indicator::lle, 1), DomainError);
}

TEST_CASE("phase portrait trajectories") {
  const auto traj = phase_portrait(transform_params(1.0, 0.5), {{0.5, 0.2}, {2.0, -1.0}}, 10, 2);
  REQUIRE(traj.size() == 2);
  CHECK(traj[0].size() == 11);
  CHECK(traj[0][0].first == doctest::Approx(0.5));
  CHECK(traj[1][0].second == doctest::Approx(-1.0));
}
