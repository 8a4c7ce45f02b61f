#pragma once

#include <functional>
#include <vector>

#include "dkt/spin.hpp"

namespace dkt {

using Rho1 = Eigen::Matrix2cd;
using Rho2 = Eigen::Matrix4cd;

// Returns U^n psi. When `sequence` is given it receives psi_0 ... psi_n.
CVector evolve(const CVector& psi, const FloquetMatrix& floquet, int n, std::vector<CVector>* sequence = nullptr);

// Calls visit(n, psi_n) for n = 0..n_kicks.
void for_each_kick(const CVector& psi0, const FloquetMatrix& floquet, int n_kicks,
                   const std::function<void(int, const CVector&)>& visit);

struct CollectiveMoments {
  Vec3 first = Vec3::Zero();    // <J_a>
  Mat3 second = Mat3::Zero();   // <J_a J_b + J_b J_a>
};

CollectiveMoments collective_expectations(const CVector& psi, const SpinOperators& ops);

// One- and two-qubit marginals of the permutation-symmetric 2j-qubit state.
Rho1 rdm_one(const CVector& psi, const SpinOperators& ops);
Rho2 rdm_two(const CVector& psi, const SpinOperators& ops);
Rho1 rdm_one(const CollectiveMoments& m, double j);
Rho2 rdm_two(const CollectiveMoments& m, double j);

struct QubitMarginals {
  Rho1 rho1;
  Rho2 rho12;
};

// Marginals of qubits 0 and (0,1) of an explicit register state.
QubitMarginals partial_traces(int n_qubits, const CVector& psi);

inline constexpr int kMaxBruteforceQubits = 6;
QubitMarginals rdm_bruteforce(int n_qubits, double theta0, double phi0, const KickParams& params, int n);

// Mean of series[1..n]; series[0] is the initial kick and is excluded.
double long_time_average(const std::vector<double>& series, int n);

// (1/T) sum_{t=0}^{T-1} F(rho1(0), rho1(t)).
double fidelity_average(const CVector& psi0, const FloquetMatrix& floquet, const SpinOperators& ops, int T);

enum class ReversalCase { standard, k_equals_kprime };

// Unitary part V of the antiunitary T = V K, K the entrywise conjugation in the Jz basis.
CMatrix time_reversal_unitary(const SpinOperators& ops, const KickParams& params, ReversalCase c);

// ||V conj(U) V^dagger - U^dagger||_max without checking the parameter case.
double reversal_residual(const SpinOperators& ops, const FloquetMatrix& floquet, ReversalCase c);

// Same, but requires k' = 0 (standard) or k = k' (k_equals_kprime).
double time_reversal_residual(double j, const KickParams& params, ReversalCase c);

}  // namespace dkt
