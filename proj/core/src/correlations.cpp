#include "dkt/correlations.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace dkt {

namespace {

double entropy_of(const Eigen::VectorXd& ev) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] > 0.0) s -= ev[i] * std::log2(ev[i]);
  }
  return s;
}

double entropy2(const Rho1& r) {
  const double a = r(0, 0).real(), d = r(1, 1).real();
  const double tr = a + d;
  const double disc = std::sqrt(std::max(0.0, (a - d) * (a - d) + 4.0 * std::norm(r(0, 1))));
  Eigen::VectorXd ev(2);
  ev << std::max(0.0, 0.5 * (tr + disc)), std::max(0.0, 0.5 * (tr - disc));
  return entropy_of(ev);
}

// Conditional entropy sum_k p_k S(rho_B|k) for the measurement axis n(theta, phi) on A.
double conditional_entropy(const Rho2& rho, double theta, double phi) {
  const cplx off = std::polar(0.5 * std::sin(theta), -phi);
  double total = 0.0;
  for (double sign : {1.0, -1.0}) {
    Rho1 proj;
    proj << 0.5 * (1.0 + sign * std::cos(theta)), sign * off, sign * std::conj(off),
        0.5 * (1.0 - sign * std::cos(theta));
    Rho1 rb = Rho1::Zero();
    for (int a = 0; a < 2; ++a)
      for (int ap = 0; ap < 2; ++ap) rb += proj(a, ap) * rho.block<2, 2>(2 * ap, 2 * a);
    const double p = rb.trace().real();
    if (p > 1e-14) total += p * entropy2(rb / p);
  }
  return total;
}

}  // namespace

void check_density_matrix(const CMatrix& rho) {
  if (rho.rows() != rho.cols()) throw DomainError("density matrix must be square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw DomainError("density matrix not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-10) throw DomainError("density matrix trace differs from 1");
}

Eigen::VectorXd clipped_spectrum(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < 0.0 && ev[i] > -1e-9) ev[i] = 0.0;
  }
  return ev;
}

double linear_entropy(const Rho1& rho) {
  check_density_matrix(rho);
  return 1.0 - (rho * rho).trace().real();
}

double von_neumann_entropy(const CMatrix& rho) {
  check_density_matrix(rho);
  return entropy_of(clipped_spectrum(rho));
}

double concurrence(const Rho2& rho) {
  check_density_matrix(rho);
  Rho2 yy = Rho2::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  Eigen::SelfAdjointEigenSolver<Rho2> es(rho);
  Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Rho2 sq = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  const Rho2 tilde = yy * rho.conjugate() * yy;
  const Rho2 r = sq * tilde * sq;
  Eigen::SelfAdjointEigenSolver<Rho2> er(0.5 * (r + r.adjoint()), Eigen::EigenvaluesOnly);
  Eigen::Vector4d lam = er.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(lam.data(), lam.data() + 4, std::greater<double>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double fidelity_qubit(const Rho1& rho, const Rho1& sigma) {
  check_density_matrix(rho);
  check_density_matrix(sigma);
  const double overlap = (rho * sigma).trace().real();
  const double dets = std::max(0.0, rho.determinant().real()) * std::max(0.0, sigma.determinant().real());
  return std::clamp(std::sqrt(std::max(0.0, overlap + 2.0 * std::sqrt(dets))), 0.0, 1.0);
}

Rho1 partial_trace_first(const Rho2& rho) { return rho.block<2, 2>(0, 0) + rho.block<2, 2>(2, 2); }

Rho1 partial_trace_second(const Rho2& rho) {
  Rho1 out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out(a, b) = rho(2 * a, 2 * b) + rho(2 * a + 1, 2 * b + 1);
  return out;
}

double classical_correlation(const Rho2& rho, double theta, double phi) {
  return entropy2(partial_trace_first(rho)) - conditional_entropy(rho, theta, phi);
}

DiscordResult quantum_discord(const Rho2& rho) {
  check_density_matrix(rho);
  const double sa = entropy2(partial_trace_second(rho));
  const double sb = entropy2(partial_trace_first(rho));
  const double sab = entropy_of(clipped_spectrum(rho));

  constexpr int n_phi = 64, n_theta = 32;
  double best_t = 0.0, best_p = 0.0;
  double best = conditional_entropy(rho, 0.0, 0.0);
  for (int it = 0; it < n_theta; ++it) {
    const double t = kPi * it / (n_theta - 1);
    for (int ip = 0; ip < n_phi; ++ip) {
      const double p = 2.0 * kPi * ip / n_phi;
      const double v = conditional_entropy(rho, t, p);
      if (v < best) {
        best = v;
        best_t = t;
        best_p = p;
      }
    }
  }
  double step = kPi / (n_theta - 1);
  while (step >= 1e-4) {
    bool moved = false;
    const double cand[4][2] = {{step, 0}, {-step, 0}, {0, step}, {0, -step}};
    for (const auto& d : cand) {
      const double t = best_t + d[0], p = best_p + d[1];
      const double v = conditional_entropy(rho, t, p);
      if (v < best) {
        best = v;
        best_t = t;
        best_p = p;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }

  DiscordResult r;
  r.mutual_info = sa + sb - sab;
  r.classical_corr = sb - best;
  r.discord = r.mutual_info - r.classical_corr;
  r.theta = best_t;
  r.phi = best_p;
  return r;
}

}  // namespace dkt
