#pragma once

#include "dkt/quantum.hpp"

namespace dkt {

// Throws DomainError unless rho is Hermitian with unit trace to 1e-10.
void check_density_matrix(const CMatrix& rho);

// Eigenvalues of a Hermitian matrix, values in (-1e-9, 0) clipped to 0.
Eigen::VectorXd clipped_spectrum(const CMatrix& rho);

double linear_entropy(const Rho1& rho);
double von_neumann_entropy(const CMatrix& rho);  // bits
double concurrence(const Rho2& rho);
double fidelity_qubit(const Rho1& rho, const Rho1& sigma);

Rho1 partial_trace_first(const Rho2& rho);   // returns rho_B
Rho1 partial_trace_second(const Rho2& rho);  // returns rho_A

struct DiscordResult {
  double discord = 0.0;
  double mutual_info = 0.0;
  double classical_corr = 0.0;
  double theta = 0.0;  // optimal measurement axis on subsystem A
  double phi = 0.0;
};

// Projective measurements on the first tensor factor.
DiscordResult quantum_discord(const Rho2& rho);

// Classical correlation J(B|A) for the projective measurement along (theta, phi).
double classical_correlation(const Rho2& rho, double theta, double phi);

}  // namespace dkt
