#pragma once

#include <vector>

#include "dkt/params.hpp"
#include "dkt/types.hpp"

namespace dkt {

// Angular momentum matrices in the Jz basis ordered m = j, j-1, ..., -j.
struct SpinOperators {
  int two_j = 0;
  double j = 0.0;
  int dim = 0;
  CMatrix Jx, Jy, Jz;
  // ladder[i] = <m_{i-1}| J+ |m_i>, ladder[0] = 0
  std::vector<double> ladder;

  double m(int i) const { return j - i; }
};

SpinOperators build_spin_operators(double j);
SpinOperators build_spin_operators_2j(int two_j);

// Product state of 2j qubits each cos(t/2)|0> + e^{-i phi} sin(t/2)|1>,
// projected on the Dicke basis.
CVector coherent_state(double j, double theta0, double phi0);

// (<Jx>, <Jy>, <Jz>) / j
Vec3 bloch_vector(const SpinOperators& ops, const CVector& psi);

struct FloquetMatrix {
  CMatrix matrix;
  KickParams params;
  double j = 0.0;
};

FloquetMatrix build_collective_floquet(const SpinOperators& ops, const KickParams& params);

// exp(-i a J) for a Hermitian generator J, via eigendecomposition.
CMatrix hermitian_exp(const CMatrix& generator, double a);

// Qubit-register Floquet (pairwise sigma-sigma torsions and single-qubit
// precession). Qubit 0 is the most significant bit of the basis index.
inline constexpr int kMaxDenseQubits = 12;
CMatrix build_qubit_floquet(int n_qubits, const KickParams& params);
void apply_qubit_floquet(int n_qubits, const KickParams& params, CVector& psi);

CVector product_state(int n_qubits, double theta0, double phi0);

// Dicke (symmetric) states of n qubits as columns, ordered m = j..-j.
CMatrix symmetric_embedding(int n_qubits);

}  // namespace dkt
