#include "dkt/params.hpp"

#include <cmath>

namespace dkt {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite ") + name);
}

}  // namespace

KickParams transform_params(double k, double k_prime, double p) {
  require_finite(k, "k");
  require_finite(k_prime, "k'");
  require_finite(p, "p");
  KickParams out;
  out.k = k;
  out.k_prime = k_prime;
  out.k_r = 0.5 * (k + k_prime);
  out.k_theta = 0.5 * (k - k_prime);
  out.p = p;
  return out;
}

KickParams from_rotated(double k_r, double k_theta, double p) {
  require_finite(k_r, "kr");
  require_finite(k_theta, "ktheta");
  require_finite(p, "p");
  KickParams out;
  out.k_r = k_r;
  out.k_theta = k_theta;
  out.k = k_r + k_theta;
  out.k_prime = k_r - k_theta;
  out.p = p;
  return out;
}

}  // namespace dkt
