#pragma once

#include <array>
#include <utility>
#include <vector>

#include "dkt/params.hpp"
#include "dkt/types.hpp"

namespace dkt {

using PhasePoint = Vec3;

PhasePoint from_angles(double theta, double phi);
std::pair<double, double> to_angles(const PhasePoint& p);

PhasePoint map_step(const PhasePoint& p, const KickParams& params);
Mat3 tangent_matrix(const PhasePoint& p, const KickParams& params);

PhasePoint rx_pi(const PhasePoint& p);
PhasePoint ry_pi(const PhasePoint& p);

struct StretchRates {
  double lyapunov = 0.0;  // nats per kick
  double ks = 0.0;        // bits per kick
};

// One tangent vector, renormalised every kick; both accumulators share the stretches.
StretchRates stretch_rates(const PhasePoint& p0, const KickParams& params, int n_kicks);
double largest_lyapunov(const PhasePoint& p0, const KickParams& params, int n_kicks);
double ks_entropy(const PhasePoint& p0, const KickParams& params, int n_kicks);

using Trajectory = std::vector<std::pair<double, double>>;
// Each trajectory holds the initial condition followed by n_kicks images.
std::vector<Trajectory> phase_portrait(const KickParams& params,
                                       const std::vector<std::pair<double, double>>& initial,
                                       int n_kicks, int workers = 1);

enum class Branch { trivial, nontrivial_upper, nontrivial_lower };
const char* branch_name(Branch b);

// nontrivial_upper is the X > 0 member of a pair, nontrivial_lower its Ry(pi) image.
struct FixedPointRecord {
  PhasePoint point;
  std::array<cplx, 3> multipliers{};
  bool stable = false;
  bool marginal = false;
  double criterion = 0.0;  // |(k+k')X cot((k+k')X/2) + cos((k+k')X) - 1|
  Branch branch = Branch::trivial;
};

std::vector<FixedPointRecord> find_fixed_points(const KickParams& params);
FixedPointRecord classify_fixed_point(const PhasePoint& fp, const KickParams& params,
                                      Branch branch = Branch::trivial);

std::pair<PhasePoint, PhasePoint> period2_orbit(const KickParams& params);

// Equatorial 4-cycle (0,0,1) -> (1,0,0) -> (0,0,-1) -> (-1,0,0).
// period4_criterion is the published closed-form inequality value; the stability
// verdict comes from the trace of the cycle monodromy, tr(M4) - 1, which for this
// cycle equals s^2 sin^2 s + 2 s sin 2s + 2 cos 2s with s = k + k'.
double period4_criterion(const KickParams& params);
double period4_monodromy_trace(const KickParams& params);
bool period4_stable(const KickParams& params);

enum class Indicator { lle, kse };

// Cell centres uniform in cos(theta) and phi.
std::vector<PhasePoint> uniform_area_grid(int grid_n);
double phase_averaged_chaos(const KickParams& params, int grid_n, int n_kicks, Indicator indicator,
                            int workers = 1);

struct SymmetryResiduals {
  double ry_commutes = 0.0;   // |Ry F - F Ry|
  double rx_relation = 0.0;   // |F Rx - Rx F Ry|
  double f2_rx = 0.0;         // |F^2 Rx - Rx F^2|
};

SymmetryResiduals symmetry_residuals(const KickParams& params, const std::vector<PhasePoint>& samples);

}  // namespace dkt
