#include "dkt/quantum.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dkt/correlations.hpp"

namespace dkt {

namespace {

const std::array<Rho1, 3>& paulis() {
  static const std::array<Rho1, 3> s = [] {
    std::array<Rho1, 3> out;
    out[0] << 0, 1, 1, 0;
    out[1] << 0, cplx(0, -1), cplx(0, 1), 0;
    out[2] << 1, 0, 0, -1;
    return out;
  }();
  return s;
}

Rho2 kron(const Rho1& a, const Rho1& b) {
  Rho2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

void check_dims(const CVector& psi, const FloquetMatrix& floquet) {
  if (floquet.matrix.rows() != psi.size() || floquet.matrix.cols() != psi.size()) {
    throw DomainError("state dimension does not match the Floquet matrix");
  }
}

}  // namespace

CVector evolve(const CVector& psi, const FloquetMatrix& floquet, int n, std::vector<CVector>* sequence) {
  check_dims(psi, floquet);
  if (n < 0) throw DomainError("negative kick count");
  CVector cur = psi;
  CVector next(psi.size());
  if (sequence) {
    sequence->clear();
    sequence->reserve(static_cast<std::size_t>(n) + 1);
    sequence->push_back(cur);
  }
  for (int t = 0; t < n; ++t) {
    next.noalias() = floquet.matrix * cur;
    cur.swap(next);
    if (sequence) sequence->push_back(cur);
  }
  return cur;
}

void for_each_kick(const CVector& psi0, const FloquetMatrix& floquet, int n_kicks,
                   const std::function<void(int, const CVector&)>& visit) {
  check_dims(psi0, floquet);
  if (n_kicks < 0) throw DomainError("negative kick count");
  CVector cur = psi0;
  CVector next(psi0.size());
  visit(0, cur);
  for (int t = 1; t <= n_kicks; ++t) {
    next.noalias() = floquet.matrix * cur;
    cur.swap(next);
    visit(t, cur);
  }
}

CollectiveMoments collective_expectations(const CVector& psi, const SpinOperators& ops) {
  if (psi.size() != ops.dim) throw DomainError("state dimension does not match 2j+1");
  const auto& a = ops.ladder;
  cplx jp = 0.0, jp2 = 0.0, q = 0.0;
  double jz = 0.0, jz2 = 0.0;
  for (int i = 0; i < ops.dim; ++i) {
    const double m = ops.m(i);
    const double w = std::norm(psi[i]);
    jz += m * w;
    jz2 += m * m * w;
    if (i >= 1) {
      const cplx c = std::conj(psi[i - 1]) * psi[i];
      jp += a[i] * c;
      q += a[i] * (2.0 * m + 1.0) * c;
    }
    if (i >= 2) jp2 += std::conj(psi[i - 2]) * a[i - 1] * a[i] * psi[i];
  }
  const double casimir = ops.j * (ops.j + 1.0);
  const double jx2 = 0.5 * (casimir - jz2 + jp2.real());
  const double jy2 = 0.5 * (casimir - jz2 - jp2.real());

  CollectiveMoments out;
  out.first = Vec3(jp.real(), jp.imag(), jz);
  out.second << 2 * jx2, jp2.imag(), q.real(),
                jp2.imag(), 2 * jy2, q.imag(),
                q.real(), q.imag(), 2 * jz2;
  return out;
}

Rho1 rdm_one(const CollectiveMoments& m, double j) {
  const Vec3 b = m.first / j;
  Rho1 rho = Rho1::Identity();
  for (int a = 0; a < 3; ++a) rho += b[a] * paulis()[a];
  return 0.5 * rho;
}

Rho2 rdm_two(const CollectiveMoments& m, double j) {
  const double n = 2.0 * j;
  if (n < 2.0) throw DomainError("two-qubit marginal needs at least two qubits");
  const Vec3 b = m.first / j;
  const Rho1 id = Rho1::Identity();
  Rho2 rho = Rho2::Identity();
  for (int a = 0; a < 3; ++a) {
    rho += b[a] * (kron(paulis()[a], id) + kron(id, paulis()[a]));
    for (int c = 0; c < 3; ++c) {
      const double t = (2.0 * m.second(a, c) - (a == c ? n : 0.0)) / (n * (n - 1.0));
      rho += t * kron(paulis()[a], paulis()[c]);
    }
  }
  return 0.25 * rho;
}

Rho1 rdm_one(const CVector& psi, const SpinOperators& ops) {
  return rdm_one(collective_expectations(psi, ops), ops.j);
}

Rho2 rdm_two(const CVector& psi, const SpinOperators& ops) {
  return rdm_two(collective_expectations(psi, ops), ops.j);
}

QubitMarginals partial_traces(int n_qubits, const CVector& psi) {
  if (n_qubits < 2) throw DomainError("partial traces need at least two qubits");
  if (psi.size() != (Eigen::Index{1} << n_qubits)) throw DomainError("register size mismatch");
  QubitMarginals out;
  const Eigen::Index rest1 = psi.size() / 2;
  const Eigen::Map<const CMatrix> m1(psi.data(), rest1, 2);
  out.rho1 = m1.transpose() * m1.conjugate();
  const Eigen::Index rest2 = psi.size() / 4;
  const Eigen::Map<const CMatrix> m2(psi.data(), rest2, 4);
  out.rho12 = m2.transpose() * m2.conjugate();
  return out;
}

QubitMarginals rdm_bruteforce(int n_qubits, double theta0, double phi0, const KickParams& params, int n) {
  if (n_qubits < 2) throw DomainError("brute-force marginals need at least two qubits");
  if (n_qubits > kMaxBruteforceQubits) {
    throw ResourceError("brute-force marginals limited to " + std::to_string(kMaxBruteforceQubits) + " qubits");
  }
  if (n < 0) throw DomainError("negative kick count");
  const CMatrix u = build_qubit_floquet(n_qubits, params);
  CVector psi = product_state(n_qubits, theta0, phi0);
  for (int t = 0; t < n; ++t) psi = u * psi;
  return partial_traces(n_qubits, psi);
}

double long_time_average(const std::vector<double>& series, int n) {
  if (series.empty()) throw DomainError("empty series");
  if (n < 1) throw DomainError("average needs n >= 1");
  if (static_cast<std::size_t>(n) >= series.size()) throw DomainError("series shorter than n + 1 kicks");
  double sum = 0.0;
  for (int t = 1; t <= n; ++t) sum += series[t];
  return sum / n;
}

double fidelity_average(const CVector& psi0, const FloquetMatrix& floquet, const SpinOperators& ops, int T) {
  if (T < 1) throw DomainError("fidelity average needs T >= 1");
  const Rho1 rho0 = rdm_one(psi0, ops);
  double sum = 0.0;
  for_each_kick(psi0, floquet, T - 1, [&](int t, const CVector& psi) {
    sum += t == 0 ? 1.0 : fidelity_qubit(rho0, rdm_one(psi, ops));
  });
  return sum / T;
}

CMatrix time_reversal_unitary(const SpinOperators& ops, const KickParams& params, ReversalCase c) {
  CMatrix rz = CMatrix::Zero(ops.dim, ops.dim);
  for (int i = 0; i < ops.dim; ++i) rz(i, i) = std::polar(1.0, kPi * ops.m(i));
  CMatrix v = hermitian_exp(ops.Jy, -params.p);
  if (c == ReversalCase::k_equals_kprime) v = v * hermitian_exp(ops.Jy, -kPi / 2);
  return v * rz;
}

double reversal_residual(const SpinOperators& ops, const FloquetMatrix& floquet, ReversalCase c) {
  const CMatrix v = time_reversal_unitary(ops, floquet.params, c);
  const CMatrix lhs = v * floquet.matrix.conjugate() * v.adjoint();
  return (lhs - floquet.matrix.adjoint()).cwiseAbs().maxCoeff();
}

double time_reversal_residual(double j, const KickParams& params, ReversalCase c) {
  if (c == ReversalCase::standard && params.k_prime != 0.0) {
    throw DomainError("standard time reversal requires k' = 0");
  }
  if (c == ReversalCase::k_equals_kprime && params.k != params.k_prime) {
    throw DomainError("this time reversal requires k = k'");
  }
  const SpinOperators ops = build_spin_operators(j);
  return reversal_residual(ops, build_collective_floquet(ops, params), c);
}

}  // namespace dkt
