#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include <Eigen/Eigenvalues>

#include "dkt/analytic.hpp"
#include "dkt/classical.hpp"
#include "dkt/correlations.hpp"
#include "dkt/parallel.hpp"
#include "dkt/quantum.hpp"
#include "dkt/sweep.hpp"

namespace dkt {

namespace {

double closed_form_residual(int workers) {
  const std::vector<std::pair<double, double>> states = {{0.0, 0.0}, {kPi / 2, -kPi / 2}, {0.2, 1.3}, {0.86, 0.45}};
  const std::vector<double> krs = {0.4, 1.0, 2.3};
  const std::vector<double> kts = {-1.1, 0.0, 0.5};
  const std::size_t cases = 3 * krs.size() * kts.size() * states.size();
  std::vector<double> worst(cases, 0.0);
  parallel_for(cases, workers, [&](std::size_t c) {
    const int n_qubits = 2 + static_cast<int>(c / (krs.size() * kts.size() * states.size()));
    const std::size_t rest = c % (krs.size() * kts.size() * states.size());
    const KickParams kick = from_rotated(krs[rest / (kts.size() * states.size())],
                                         kts[(rest / states.size()) % kts.size()]);
    const auto [th, ph] = states[rest % states.size()];
    const SpinOperators ops = build_spin_operators_2j(n_qubits);
    const FloquetMatrix floquet = build_collective_floquet(ops, kick);
    for_each_kick(coherent_state(ops.j, th, ph), floquet, 100, [&](int n, const CVector& psi) {
      const double numeric = linear_entropy(rdm_one(psi, ops));
      const double exact = closed_form_linear_entropy({n_qubits, kick, th, ph, n});
      worst[c] = std::max(worst[c], std::abs(numeric - exact));
    });
  });
  return *std::max_element(worst.begin(), worst.end());
}

double spectrum_residual() {
  const CMatrix e = symmetric_embedding(2);
  double worst = 0.0;
  for (double kr : {0.3, 1.7, 2.9}) {
    const KickParams kick = from_rotated(kr, 0.8);
    const CMatrix u = e.adjoint() * build_qubit_floquet(2, kick) * e;
    Eigen::ComplexEigenSolver<CMatrix> es(u);
    std::vector<cplx> want = {cplx(0, -1), cplx(0, 1), std::polar(1.0, -kr / 2)};
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      auto best = std::min_element(want.begin(), want.end(), [&](cplx a, cplx b) {
        return std::abs(a - es.eigenvalues()[i]) < std::abs(b - es.eigenvalues()[i]);
      });
      worst = std::max(worst, std::abs(*best - es.eigenvalues()[i]));
      want.erase(best);
    }
  }
  return worst;
}

double rdm_residual() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 24; ++trial) {
    const int n_qubits = 2 + trial % 3;
    const KickParams kick = from_rotated(4.0 * u(rng) - 2.0, 4.0 * u(rng) - 2.0);
    const double th = kPi * u(rng), ph = 2.0 * kPi * u(rng) - kPi;
    const int n = static_cast<int>(20 * u(rng));
    const QubitMarginals brute = rdm_bruteforce(n_qubits, th, ph, kick, n);
    const SpinOperators ops = build_spin_operators_2j(n_qubits);
    const CVector psi = evolve(coherent_state(ops.j, th, ph), build_collective_floquet(ops, kick), n);
    worst = std::max(worst, (rdm_one(psi, ops) - brute.rho1).cwiseAbs().maxCoeff());
    worst = std::max(worst, (rdm_two(psi, ops) - brute.rho12).cwiseAbs().maxCoeff());
  }
  return worst;
}

double tangent_residual() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double h = 1e-6;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const KickParams kick = transform_params(6.0 * u(rng) - 3.0, 6.0 * u(rng) - 3.0);
    const PhasePoint p = from_angles(kPi * u(rng), 2.0 * kPi * u(rng));
    const Mat3 jac = tangent_matrix(p, kick);
    Vec3 e1 = p.unitOrthogonal();
    Vec3 e2 = p.cross(e1);
    for (const Vec3& v : {e1, e2}) {
      const Vec3 fd = (map_step((p + h * v).normalized(), kick) - map_step((p - h * v).normalized(), kick)) / (2 * h);
      worst = std::max(worst, (jac * v - fd).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double reversal_residual_max() {
  double worst = 0.0;
  worst = std::max(worst, time_reversal_residual(3.0, transform_params(2.5, 0.0), ReversalCase::standard));
  worst = std::max(worst, time_reversal_residual(3.0, transform_params(1.3, 1.3), ReversalCase::k_equals_kprime));
  return worst;
}

double four_qubit_values() {
  return std::max(std::abs(published_average_four_qubit_polar(from_rotated(kPi / 2, kPi / 2)) - 3.0 / 8.0),
                  std::abs(published_average_four_qubit_polar(from_rotated(kPi, 0.0)) - 11.0 / 32.0));
}

double symmetry_residual() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PhasePoint> pts;
  for (int i = 0; i < 100; ++i) pts.push_back(from_angles(kPi * u(rng), 2.0 * kPi * u(rng)));
  const SymmetryResiduals r = symmetry_residuals(transform_params(2.1, -0.7), pts);
  return std::max({r.ry_commutes, r.rx_relation, r.f2_rx});
}

double period2_residual() {
  const KickParams kick = transform_params(2.3, 2.3);
  const auto [a, b] = period2_orbit(kick);
  const PhasePoint fa = map_step(a, kick);
  return std::max((fa - b).norm(), (map_step(fa, kick) - a).norm());
}

}  // namespace

std::vector<ValidationCheck> run_validation(int workers) {
  std::vector<ValidationCheck> checks = {
      {"closed-form linear entropy vs Floquet evolution (N=2,3,4)", closed_form_residual(workers), 1e-10},
      {"two-qubit symmetric spectrum {-i, i, exp(-i kr/2)}", spectrum_residual(), 1e-12},
      {"collective-moment marginals vs partial traces", rdm_residual(), 1e-11},
      {"tangent matrix vs central differences", tangent_residual(), 1e-6},
      {"time-reversal residual (k'=0 and k=k')", reversal_residual_max(), 1e-10},
      {"four-qubit polar averages 3/8 and 11/32", four_qubit_values(), 1e-14},
      {"map symmetry relations", symmetry_residual(), 1e-12},
      {"period-2 orbit invariance", period2_residual(), 1e-9},
  };
  // Fault injection so the breach exit path can be exercised end to end.
  if (const char* inject = std::getenv("DKT_VALIDATE_INJECT"); inject && std::string(inject) == "1") {
    checks.push_back({"injected failure", 1.0, 0.0});
  }
  return checks;
}

}  // namespace dkt
