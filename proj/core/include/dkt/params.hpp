#pragma once

#include "dkt/types.hpp"

namespace dkt {

// Kick strengths in both parameterisations. Construct through the factories so
// the two views stay consistent.
struct KickParams {
  double k = 0.0;
  double k_prime = 0.0;
  double k_r = 0.0;
  double k_theta = 0.0;
  double p = kPi / 2;
};

KickParams transform_params(double k, double k_prime, double p = kPi / 2);
KickParams from_rotated(double k_r, double k_theta, double p = kPi / 2);

}  // namespace dkt
