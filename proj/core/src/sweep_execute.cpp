#include <chrono>
#include <cmath>
#include <ctime>

#include "dkt/classical.hpp"
#include "dkt/correlations.hpp"
#include "dkt/parallel.hpp"
#include "dkt/quantum.hpp"
#include "dkt/sweep.hpp"

#ifndef DKT_VERSION
#define DKT_VERSION "unknown"
#endif

namespace dkt {

namespace {

constexpr int kMaxCollectiveDim = 2001;
constexpr double kMaxResultValues = 2e8;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 0xf];
  return s;
}

SpinOperators checked_spin(double j) {
  if (2.0 * j + 1.0 > kMaxCollectiveDim) {
    throw ResourceError("j = " + std::to_string(j) + " exceeds the dense limit of dimension " +
                        std::to_string(kMaxCollectiveDim));
  }
  return build_spin_operators(j);
}

void reserve_check(double count) {
  if (count > kMaxResultValues) throw ResourceError("result would hold " + std::to_string(count) + " values");
}

double measure_value(Measure m, const CVector& psi, const SpinOperators& ops) {
  switch (m) {
    case Measure::linear:
      return linear_entropy(rdm_one(psi, ops));
    case Measure::vn:
      return von_neumann_entropy(rdm_one(psi, ops));
    case Measure::discord:
      return quantum_discord(rdm_two(psi, ops)).discord;
    case Measure::concurrence:
      return concurrence(rdm_two(psi, ops));
  }
  return 0.0;
}

double time_averaged_measure(Measure m, const CVector& psi0, const FloquetMatrix& floquet,
                             const SpinOperators& ops, int kicks) {
  double sum = 0.0;
  for_each_kick(psi0, floquet, kicks, [&](int t, const CVector& psi) {
    if (t > 0) sum += measure_value(m, psi, ops);
  });
  return sum / kicks;
}

std::vector<double> kr_values(const SweepConfig& c) {
  return c.kr_range ? c.kr_range->values() : std::vector<double>{c.kick.k_r};
}

void run_phase_portrait(const SweepConfig& c, int workers, GridResult& r) {
  const auto th = theta_centres(c.grid);
  const auto ph = phi_centres(c.grid);
  reserve_check(2.0 * th.size() * ph.size() * (c.kicks + 1.0));
  std::vector<std::pair<double, double>> initial;
  for (double t : th)
    for (double p : ph) initial.emplace_back(t, p);
  const auto traj = phase_portrait(c.kick, initial, c.kicks, workers);
  Axis ax_traj{"trajectory", {}}, ax_kick{"kick", {}};
  for (std::size_t i = 0; i < traj.size(); ++i) ax_traj.values.push_back(static_cast<double>(i));
  for (int n = 0; n <= c.kicks; ++n) ax_kick.values.push_back(n);
  r.axes = {ax_traj, ax_kick};
  r.fields = {"theta", "phi"};
  for (const auto& tr : traj) {
    for (const auto& [t, p] : tr) {
      r.values.push_back(t);
      r.values.push_back(p);
    }
  }
  r.manifest.total_kicks = static_cast<std::uint64_t>(traj.size()) * c.kicks;
}

void run_lle_map(const SweepConfig& c, int workers, GridResult& r) {
  const auto th = theta_centres(c.grid);
  const auto ph = phi_centres(c.grid);
  r.axes = {{"theta", th}, {"phi", ph}};
  r.fields = {"lle"};
  r.values.assign(th.size() * ph.size(), 0.0);
  parallel_for(r.values.size(), workers, [&](std::size_t i) {
    r.values[i] = largest_lyapunov(from_angles(th[i / ph.size()], ph[i % ph.size()]), c.kick, c.kicks);
  });
  r.manifest.total_kicks = static_cast<std::uint64_t>(r.values.size()) * c.kicks;
}

void run_kse_scan(const SweepConfig& c, int workers, GridResult& r) {
  const auto kr = kr_values(c);
  const auto kt = c.ktheta_range ? c.ktheta_range->values() : std::vector<double>{c.kick.k_theta};
  r.axes = {{"kr", kr}, {"ktheta", kt}};
  r.fields = {"kse"};
  for (double a : kr) {
    for (double b : kt) {
      r.values.push_back(phase_averaged_chaos(from_rotated(a, b, c.kick.p), c.grid, c.kicks, Indicator::kse, workers));
    }
  }
  r.manifest.total_kicks = static_cast<std::uint64_t>(r.values.size()) * c.grid * c.grid * c.kicks;
}

void run_fixed_points(const SweepConfig& c, GridResult& r) {
  const auto fps = find_fixed_points(c.kick);
  Axis idx{"index", {}};
  for (std::size_t i = 0; i < fps.size(); ++i) idx.values.push_back(static_cast<double>(i));
  r.axes = {idx};
  r.fields = {"x", "y", "z", "mu1_re", "mu1_im", "mu2_re", "mu2_im", "mu3_re", "mu3_im",
              "stable", "marginal", "criterion", "branch"};
  for (const auto& f : fps) {
    r.values.insert(r.values.end(), {f.point.x(), f.point.y(), f.point.z()});
    for (const auto& mu : f.multipliers) r.values.insert(r.values.end(), {mu.real(), mu.imag()});
    r.values.insert(r.values.end(), {f.stable ? 1.0 : 0.0, f.marginal ? 1.0 : 0.0, f.criterion,
                                     static_cast<double>(static_cast<int>(f.branch))});
  }
  r.manifest.extra.emplace_back("branch_codes", "0=trivial,1=nontrivial_upper,2=nontrivial_lower");
}

void run_correlation_map(const SweepConfig& c, int workers, GridResult& r) {
  const SpinOperators ops = checked_spin(c.j);
  const FloquetMatrix floquet = build_collective_floquet(ops, c.kick);
  const auto th = theta_centres(c.grid);
  const auto ph = phi_centres(c.grid);
  r.axes = {{"theta", th}, {"phi", ph}};
  r.fields = {std::string(measure_name(c.measure)) + "_mean"};
  r.values.assign(th.size() * ph.size(), 0.0);
  parallel_for(r.values.size(), workers, [&](std::size_t i) {
    const CVector psi0 = coherent_state(c.j, th[i / ph.size()], ph[i % ph.size()]);
    r.values[i] = time_averaged_measure(c.measure, psi0, floquet, ops, c.kicks);
  });
  r.manifest.total_kicks = static_cast<std::uint64_t>(r.values.size()) * c.kicks;
}

void run_dynamics(const SweepConfig& c, GridResult& r) {
  const SpinOperators ops = checked_spin(c.j);
  const FloquetMatrix floquet = build_collective_floquet(ops, c.kick);
  const CVector psi0 = coherent_state(c.j, c.theta0, c.phi0);
  const Rho1 rho0 = rdm_one(psi0, ops);
  Axis kick{"kick", {}};
  r.fields = {"linear", "vn", "concurrence", "discord", "fidelity"};
  for_each_kick(psi0, floquet, c.kicks, [&](int t, const CVector& psi) {
    kick.values.push_back(t);
    const Rho1 r1 = rdm_one(psi, ops);
    const Rho2 r2 = rdm_two(psi, ops);
    r.values.insert(r.values.end(), {linear_entropy(r1), von_neumann_entropy(r1), concurrence(r2),
                                     quantum_discord(r2).discord, fidelity_qubit(rho0, r1)});
  });
  r.axes = {kick};
  r.manifest.total_kicks = static_cast<std::uint64_t>(c.kicks);
}

void run_kr_scan(const SweepConfig& c, int workers, GridResult& r, bool fidelity) {
  const SpinOperators ops = checked_spin(c.j);
  const CVector psi0 = coherent_state(c.j, c.theta0, c.phi0);
  const auto kr = kr_values(c);
  r.axes = {{"kr", kr}};
  r.fields = {fidelity ? std::string("fidelity") : std::string(measure_name(c.measure)) + "_mean"};
  r.values.assign(kr.size(), 0.0);
  parallel_for(kr.size(), workers, [&](std::size_t i) {
    const FloquetMatrix floquet = build_collective_floquet(ops, from_rotated(kr[i], c.kick.k_theta, c.kick.p));
    r.values[i] = fidelity ? fidelity_average(psi0, floquet, ops, c.kicks)
                           : time_averaged_measure(c.measure, psi0, floquet, ops, c.kicks);
  });
  r.manifest.total_kicks = static_cast<std::uint64_t>(kr.size()) * c.kicks;
  if (!fidelity && kr.size() > 1) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", steepest_rise(kr, r.values));
    r.manifest.extra.emplace_back("steepest_rise_kr", buf);
  }
}

void run_validate(const SweepConfig& c, int workers, GridResult& r) {
  (void)c;
  const auto checks = run_validation(workers);
  Axis idx{"check", {}};
  r.fields = {"residual", "tolerance", "passed"};
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    idx.values.push_back(static_cast<double>(i));
    r.values.insert(r.values.end(), {checks[i].residual, checks[i].tolerance, checks[i].passed() ? 1.0 : 0.0});
    r.manifest.extra.emplace_back("check_" + std::to_string(i), checks[i].name);
    if (!checks[i].passed()) ++failed;
  }
  r.axes = {idx};
  if (failed > 0) r.manifest.status = "tolerance breach in " + std::to_string(failed) + " check(s)";
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RunManifest start_manifest(const SweepConfig& config) {
  RunManifest m;
  m.config_hash = hex64(fnv1a(config.canonical()));
  m.version = toolkit_version();
  m.timestamp = utc_now();
  m.workers = resolve_workers(config.workers);
  return m;
}

std::string toolkit_version() { return DKT_VERSION; }

std::vector<double> theta_centres(int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = kPi * (i + 0.5) / n;
  return v;
}

std::vector<double> phi_centres(int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = -kPi + 2.0 * kPi * (i + 0.5) / n;
  return v;
}

double steepest_rise(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("steepest rise needs two or more samples");
  std::size_t best = 0;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if (y[i + 1] - y[i] > y[best + 1] - y[best]) best = i;
  }
  return 0.5 * (x[best] + x[best + 1]);
}

std::size_t GridResult::cell_count() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.values.size();
  return n;
}

GridResult execute_sweep(const SweepConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  GridResult r;
  r.config = c.canonical();
  r.manifest = start_manifest(c);
  const int w = r.manifest.workers;

  switch (c.job) {
    case JobKind::phase_portrait:
      run_phase_portrait(c, w, r);
      break;
    case JobKind::lle_map:
      run_lle_map(c, w, r);
      break;
    case JobKind::kse_scan:
      run_kse_scan(c, w, r);
      break;
    case JobKind::fixed_points:
      run_fixed_points(c, r);
      break;
    case JobKind::correlation_map:
      run_correlation_map(c, w, r);
      break;
    case JobKind::dynamics:
      run_dynamics(c, r);
      break;
    case JobKind::metastability_scan:
      run_kr_scan(c, w, r, false);
      break;
    case JobKind::fidelity_scan:
      run_kr_scan(c, w, r, true);
      break;
    case JobKind::validate:
      run_validate(c, w, r);
      break;
  }

  if (r.values.size() != r.cell_count() * r.fields.size()) throw std::logic_error("result shape mismatch");
  for (double v : r.values) {
    if (!std::isfinite(v)) throw DomainError("non-finite value in result");
  }
  r.manifest.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace dkt
