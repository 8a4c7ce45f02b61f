#include "dkt/spin.hpp"

#include <bit>
#include <cmath>

namespace dkt {

namespace {

int checked_two_j(double j) {
  const double twice = 2.0 * j;
  const double r = std::round(twice);
  if (!std::isfinite(j) || r < 1.0 || std::abs(twice - r) > 1e-12) {
    throw DomainError("spin j must be a positive half-integer");
  }
  return static_cast<int>(r);
}

double log_binomial(int n, int q) {
  return std::lgamma(n + 1.0) - std::lgamma(q + 1.0) - std::lgamma(n - q + 1.0);
}

// Apply the same 2x2 matrix to every qubit of the register.
void apply_local_all(int n_qubits, const Eigen::Matrix2cd& g, CVector& psi) {
  const Eigen::Index size = psi.size();
  for (int l = 0; l < n_qubits; ++l) {
    const Eigen::Index stride = Eigen::Index{1} << (n_qubits - 1 - l);
    for (Eigen::Index base = 0; base < size; base += 2 * stride) {
      for (Eigen::Index off = 0; off < stride; ++off) {
        const Eigen::Index i0 = base + off;
        const Eigen::Index i1 = i0 + stride;
        const cplx a = psi[i0];
        const cplx b = psi[i1];
        psi[i0] = g(0, 0) * a + g(0, 1) * b;
        psi[i1] = g(1, 0) * a + g(1, 1) * b;
      }
    }
  }
}

// exp(-i c sum_{l'<l} z_l' z_l) in the computational basis.
void apply_zz_phase(int n_qubits, double c, CVector& psi) {
  for (Eigen::Index b = 0; b < psi.size(); ++b) {
    const int ones = std::popcount(static_cast<unsigned long long>(b));
    const int s = n_qubits - 2 * ones;
    const double pair_sum = 0.5 * (static_cast<double>(s) * s - n_qubits);
    psi[b] *= std::polar(1.0, -c * pair_sum);
  }
}

}  // namespace

SpinOperators build_spin_operators(double j) { return build_spin_operators_2j(checked_two_j(j)); }

SpinOperators build_spin_operators_2j(int two_j) {
  if (two_j < 1) throw DomainError("spin j must be a positive half-integer");
  SpinOperators ops;
  ops.two_j = two_j;
  ops.j = 0.5 * two_j;
  ops.dim = two_j + 1;
  const int d = ops.dim;
  ops.ladder.assign(d, 0.0);
  for (int i = 1; i < d; ++i) ops.ladder[i] = std::sqrt(static_cast<double>(i) * (two_j - i + 1));

  CMatrix jp = CMatrix::Zero(d, d);
  for (int i = 1; i < d; ++i) jp(i - 1, i) = ops.ladder[i];
  ops.Jx = 0.5 * (jp + jp.adjoint());
  ops.Jy = cplx(0.0, -0.5) * (jp - jp.adjoint());
  ops.Jz = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) ops.Jz(i, i) = ops.m(i);
  return ops;
}

CVector coherent_state(double j, double theta0, double phi0) {
  const int n = checked_two_j(j);
  if (!(theta0 >= 0.0 && theta0 <= kPi) || !std::isfinite(phi0)) {
    throw DomainError("coherent state angles out of range");
  }
  const double c = std::cos(0.5 * theta0);
  const double s = std::sin(0.5 * theta0);
  const double lc = c > 0.0 ? std::log(c) : 0.0;
  const double ls = s > 0.0 ? std::log(s) : 0.0;
  CVector psi(n + 1);
  for (int q = 0; q <= n; ++q) {
    const int pc = n - q;
    if ((pc > 0 && c <= 0.0) || (q > 0 && s <= 0.0)) {
      psi[q] = 0.0;
      continue;
    }
    const double mag = std::exp(0.5 * log_binomial(n, q) + pc * lc + q * ls);
    psi[q] = std::polar(mag, -q * phi0);
  }
  psi /= psi.norm();
  return psi;
}

Vec3 bloch_vector(const SpinOperators& ops, const CVector& psi) {
  cplx jplus = 0.0;
  double jz = 0.0;
  for (int i = 0; i < ops.dim; ++i) {
    jz += ops.m(i) * std::norm(psi[i]);
    if (i > 0) jplus += std::conj(psi[i - 1]) * ops.ladder[i] * psi[i];
  }
  return Vec3(jplus.real(), jplus.imag(), jz) / ops.j;
}

CMatrix hermitian_exp(const CMatrix& generator, double a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(generator);
  const CMatrix& v = es.eigenvectors();
  CVector phases(v.cols());
  for (Eigen::Index i = 0; i < v.cols(); ++i) phases[i] = std::polar(1.0, -a * es.eigenvalues()[i]);
  return v * phases.asDiagonal() * v.adjoint();
}

FloquetMatrix build_collective_floquet(const SpinOperators& ops, const KickParams& params) {
  const int d = ops.dim;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(ops.Jy);
  const CMatrix& v = es.eigenvectors();
  const auto rotation = [&](double angle) {
    CVector ph(d);
    for (int i = 0; i < d; ++i) ph[i] = std::polar(1.0, -angle * es.eigenvalues()[i]);
    return CMatrix(v * ph.asDiagonal() * v.adjoint());
  };
  const CMatrix r = rotation(kPi / 2);
  const CMatrix precession = std::abs(params.p - kPi / 2) == 0.0 ? r : rotation(params.p);

  CVector dz(d), dx(d);
  for (int i = 0; i < d; ++i) {
    const double m2 = ops.m(i) * ops.m(i);
    dz[i] = std::polar(1.0, -params.k / (2.0 * ops.j) * m2);
    dx[i] = std::polar(1.0, -params.k_prime / (2.0 * ops.j) * m2);
  }
  const CMatrix ex = r * dx.asDiagonal() * r.adjoint();
  FloquetMatrix out;
  out.matrix = ex * (dz.asDiagonal() * precession);
  out.params = params;
  out.j = ops.j;
  return out;
}

void apply_qubit_floquet(int n_qubits, const KickParams& params, CVector& psi) {
  const double j = 0.5 * n_qubits;
  const double c = std::cos(0.5 * params.p);
  const double s = std::sin(0.5 * params.p);
  Eigen::Matrix2cd ry;
  ry << c, -s, s, c;
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd had;
  had << h, h, h, -h;

  apply_local_all(n_qubits, ry, psi);
  apply_zz_phase(n_qubits, params.k / (4.0 * j), psi);
  apply_local_all(n_qubits, had, psi);
  apply_zz_phase(n_qubits, params.k_prime / (4.0 * j), psi);
  apply_local_all(n_qubits, had, psi);
}

CMatrix build_qubit_floquet(int n_qubits, const KickParams& params) {
  if (n_qubits < 2) throw DomainError("qubit Floquet needs at least two qubits");
  if (n_qubits > kMaxDenseQubits) {
    throw ResourceError("dense qubit Floquet limited to " + std::to_string(kMaxDenseQubits) + " qubits");
  }
  const Eigen::Index size = Eigen::Index{1} << n_qubits;
  CMatrix u(size, size);
  CVector col(size);
  for (Eigen::Index c = 0; c < size; ++c) {
    col.setZero();
    col[c] = 1.0;
    apply_qubit_floquet(n_qubits, params, col);
    u.col(c) = col;
  }
  return u;
}

CVector product_state(int n_qubits, double theta0, double phi0) {
  const cplx a = std::cos(0.5 * theta0);
  const cplx b = std::polar(std::sin(0.5 * theta0), -phi0);
  const Eigen::Index size = Eigen::Index{1} << n_qubits;
  CVector psi(size);
  for (Eigen::Index idx = 0; idx < size; ++idx) {
    cplx amp = 1.0;
    for (int l = 0; l < n_qubits; ++l) amp *= ((idx >> (n_qubits - 1 - l)) & 1) ? b : a;
    psi[idx] = amp;
  }
  return psi;
}

CMatrix symmetric_embedding(int n_qubits) {
  const Eigen::Index size = Eigen::Index{1} << n_qubits;
  CMatrix e = CMatrix::Zero(size, n_qubits + 1);
  for (Eigen::Index idx = 0; idx < size; ++idx) {
    const int q = std::popcount(static_cast<unsigned long long>(idx));
    e(idx, q) = std::exp(-0.5 * log_binomial(n_qubits, q));
  }
  return e;
}

}  // namespace dkt
