#include "dkt/classical.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "dkt/parallel.hpp"

namespace dkt {

namespace {

constexpr double kFixedTol = 1e-9;
constexpr double kMarginalTol = 1e-8;
constexpr int kScanBrackets = 10000;

Vec3 renormalized(Vec3 v) {
  const double n2 = v.squaredNorm();
  if (std::abs(n2 - 1.0) > 1e-12) v /= std::sqrt(n2);
  return v;
}

Vec3 initial_tangent(const PhasePoint& p) {
  Vec3 d = Vec3::UnitX() - p.x() * p;
  if (d.norm() < 1e-8) d = Vec3::UnitY() - p.y() * p;
  return d.normalized();
}

double fixed_point_f(double x, double rate) {
  const double s2 = std::pow(std::sin(rate * x), 2);
  return s2 / (1.0 + s2) - x * x;
}

std::vector<double> scan_roots(double rate) {
  std::vector<double> roots;
  double x0 = 1.0 / kScanBrackets;
  double f0 = fixed_point_f(x0, rate);
  for (int i = 2; i <= kScanBrackets; ++i) {
    const double x1 = static_cast<double>(i) / kScanBrackets;
    const double f1 = fixed_point_f(x1, rate);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if (f0 * f1 < 0.0) {
      double lo = x0, hi = x1, flo = f0;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fixed_point_f(mid, rate);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  if (f0 == 0.0) roots.push_back(x0);
  return roots;
}

// Refine a fixed-point candidate with a couple of Newton steps on F(p) - p,
// restricted to the tangent plane.
PhasePoint polish(PhasePoint p, const KickParams& params) {
  for (int it = 0; it < 3; ++it) {
    const Vec3 r = map_step(p, params) - p;
    if (r.norm() < 1e-15) break;
    const Mat3 a = tangent_matrix(p, params) - Mat3::Identity();
    Eigen::Matrix<double, 3, 2> basis;
    basis.col(0) = initial_tangent(p);
    basis.col(1) = p.cross(basis.col(0)).normalized();
    const Eigen::Matrix<double, 3, 2> ab = a * basis;
    const Eigen::Vector2d step = ab.colPivHouseholderQr().solve(-r);
    const PhasePoint next = (p + basis * step).normalized();
    if ((map_step(next, params) - next).norm() >= r.norm()) break;
    p = next;
  }
  return p;
}

}  // namespace

PhasePoint from_angles(double theta, double phi) {
  return PhasePoint(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
}

std::pair<double, double> to_angles(const PhasePoint& p) {
  return {std::acos(std::clamp(p.z(), -1.0, 1.0)), std::atan2(p.y(), p.x())};
}

PhasePoint map_step(const PhasePoint& p, const KickParams& params) {
  const double k = params.k;
  const double kp = params.k_prime;
  const double X = p.x(), Y = p.y(), Z = p.z();
  const double c = std::cos(k * X), s = std::sin(k * X);
  const double a = Z * c + Y * s;
  const double b = Y * c - Z * s;
  const double ca = std::cos(kp * a), sa = std::sin(kp * a);
  return renormalized(PhasePoint(a, b * ca + X * sa, -X * ca + b * sa));
}

Mat3 tangent_matrix(const PhasePoint& p, const KickParams& params) {
  const double k = params.k;
  const double kp = params.k_prime;
  const double X = p.x(), Y = p.y(), Z = p.z();
  const double c = std::cos(k * X), s = std::sin(k * X);
  const double arg = kp * Y * s + kp * Z * c;
  const double ca = std::cos(arg), sa = std::sin(arg);
  const double b = Y * c - Z * s;

  Mat3 m;
  m(0, 0) = k * Y * c - k * Z * s;
  m(0, 1) = s;
  m(0, 2) = c;
  m(1, 0) = -k * kp * b * b * sa + k * kp * X * b * ca - k * (Y * s + Z * c) * ca + sa;
  m(1, 1) = c * ca + kp * X * s * ca + kp * s * (Z * s - Y * c) * sa;
  m(1, 2) = kp * X * c * ca - s * ca - kp * c * b * sa;
  m(2, 0) = ca * (k * kp * Y * Y * c * c - k * kp * Y * Z * std::sin(2 * k * X) + k * kp * Z * Z * s * s - 1.0) +
            k * (c * (kp * X * Y - Z) - s * (kp * X * Z + Y)) * sa;
  m(2, 1) = kp * s * b * ca + c * sa + kp * X * s * sa;
  m(2, 2) = kp * c * b * ca + kp * X * c * sa - s * sa;
  return m;
}

PhasePoint rx_pi(const PhasePoint& p) { return PhasePoint(p.x(), -p.y(), -p.z()); }
PhasePoint ry_pi(const PhasePoint& p) { return PhasePoint(-p.x(), p.y(), -p.z()); }

StretchRates stretch_rates(const PhasePoint& p0, const KickParams& params, int n_kicks) {
  if (n_kicks < 1) throw DomainError("stretch rates need at least one kick");
  PhasePoint p = renormalized(p0);
  Vec3 d = initial_tangent(p);
  double sum_ln = 0.0;
  double sum_log2 = 0.0;
  for (int n = 0; n < n_kicks; ++n) {
    d = tangent_matrix(p, params) * d;
    const double l = d.norm();
    sum_ln += std::log(l);
    sum_log2 += std::log2(l);
    d /= l;
    p = map_step(p, params);
  }
  return {sum_ln / n_kicks, sum_log2 / n_kicks};
}

double largest_lyapunov(const PhasePoint& p0, const KickParams& params, int n_kicks) {
  if (n_kicks < 100) throw DomainError("largest_lyapunov requires n_kicks >= 100");
  return stretch_rates(p0, params, n_kicks).lyapunov;
}

double ks_entropy(const PhasePoint& p0, const KickParams& params, int n_kicks) {
  if (n_kicks < 1000) throw DomainError("ks_entropy requires n_kicks >= 1000");
  return stretch_rates(p0, params, n_kicks).ks;
}

std::vector<Trajectory> phase_portrait(const KickParams& params,
                                       const std::vector<std::pair<double, double>>& initial,
                                       int n_kicks, int workers) {
  if (initial.empty()) throw DomainError("phase portrait needs at least one initial condition");
  if (n_kicks < 0) throw DomainError("negative kick count");
  std::vector<Trajectory> out(initial.size());
  parallel_for(initial.size(), workers, [&](std::size_t i) {
    Trajectory& t = out[i];
    t.reserve(static_cast<std::size_t>(n_kicks) + 1);
    PhasePoint p = from_angles(initial[i].first, initial[i].second);
    t.push_back(to_angles(p));
    for (int n = 0; n < n_kicks; ++n) {
      p = map_step(p, params);
      t.push_back(to_angles(p));
    }
  });
  return out;
}

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::trivial:
      return "trivial";
    case Branch::nontrivial_upper:
      return "nontrivial-upper";
    case Branch::nontrivial_lower:
      return "nontrivial-lower";
  }
  return "unknown";
}

std::vector<FixedPointRecord> find_fixed_points(const KickParams& params) {
  std::vector<FixedPointRecord> out;
  out.push_back(classify_fixed_point(PhasePoint(0, 1, 0), params, Branch::trivial));
  out.push_back(classify_fixed_point(PhasePoint(0, -1, 0), params, Branch::trivial));

  std::vector<PhasePoint> found;
  const auto consider = [&](double x, double rate, double twist) {
    const double sr = std::sin(rate * x);
    PhasePoint p(x, x * std::cos(twist * x) / sr, -x * std::sin(twist * x) / sr);
    p = polish(p.normalized(), params);
    if ((map_step(p, params) - p).norm() > kFixedTol) return;
    for (const auto& q : found) {
      if ((q - p).norm() < 1e-8) return;
    }
    found.push_back(p);
  };
  for (double x : scan_roots(params.k_r)) consider(x, params.k_r, params.k_theta);
  if (std::abs(params.k_theta) > std::abs(params.k_r)) {
    for (double x : scan_roots(params.k_theta)) consider(x, params.k_theta, params.k_r);
  }
  std::sort(found.begin(), found.end(), [](const PhasePoint& a, const PhasePoint& b) { return a.x() < b.x(); });
  for (const auto& p : found) {
    out.push_back(classify_fixed_point(p, params, Branch::nontrivial_upper));
    out.push_back(classify_fixed_point(ry_pi(p), params, Branch::nontrivial_lower));
  }
  return out;
}

FixedPointRecord classify_fixed_point(const PhasePoint& fp, const KickParams& params, Branch branch) {
  const PhasePoint p = renormalized(fp);
  if ((map_step(p, params) - p).norm() > kFixedTol) {
    throw DomainError("point is not a fixed point of the map");
  }
  const Mat3 m = tangent_matrix(p, params);
  Eigen::EigenSolver<Mat3> es(m, false);
  FixedPointRecord rec;
  rec.point = p;
  rec.branch = branch;
  for (int i = 0; i < 3; ++i) rec.multipliers[i] = es.eigenvalues()[i];
  std::sort(rec.multipliers.begin(), rec.multipliers.end(),
            [](cplx a, cplx b) { return std::abs(a - 1.0) < std::abs(b - 1.0); });

  const double s = params.k + params.k_prime;
  const double x = p.x();
  const bool closed_form = branch != Branch::trivial && std::abs(std::sin(0.5 * s * x)) > 1e-12 &&
                           std::abs(fixed_point_f(std::abs(x), params.k_r)) < 1e-9;
  const double half_trace = m.trace() - 1.0;
  rec.criterion = closed_form ? std::abs(s * x / std::tan(0.5 * s * x) + std::cos(s * x) - 1.0)
                              : std::abs(half_trace);

  double max_mod = 0.0;
  for (const auto& mu : rec.multipliers) max_mod = std::max(max_mod, std::abs(mu));
  rec.marginal = std::abs(std::abs(half_trace) - 2.0) <= kMarginalTol;
  rec.stable = !rec.marginal && max_mod <= 1.0 + kMarginalTol;
  return rec;
}

std::pair<PhasePoint, PhasePoint> period2_orbit(const KickParams& params) {
  const double s = params.k + params.k_prime;
  if (!(s > std::sqrt(2.0) * kPi)) throw DomainError("period-2 orbit requires k + k' > sqrt(2) pi");
  const double x = kPi / s;
  const double h = std::sqrt(1.0 - 2.0 * x * x);
  const double a = params.k_theta * x;
  const auto point = [&](double z0) {
    return PhasePoint(x, x * std::cos(a) + z0 * std::sin(a), -x * std::sin(a) + z0 * std::cos(a));
  };
  return {point(h), point(-h)};
}

double period4_criterion(const KickParams& params) {
  const double s = params.k + params.k_prime;
  return std::abs(0.5 * s * s * std::pow(std::sin(0.5 * s), 2) + 4.0 * (std::sin(s) + std::cos(s)));
}

double period4_monodromy_trace(const KickParams& params) {
  Mat3 m = Mat3::Identity();
  PhasePoint p(0, 0, 1);
  for (int i = 0; i < 4; ++i) {
    m = tangent_matrix(p, params) * m;
    p = map_step(p, params);
  }
  return m.trace() - 1.0;
}

bool period4_stable(const KickParams& params) {
  return std::abs(period4_monodromy_trace(params)) < 2.0 - kMarginalTol;
}

std::vector<PhasePoint> uniform_area_grid(int grid_n) {
  if (grid_n < 1) throw DomainError("grid size must be positive");
  std::vector<PhasePoint> pts;
  pts.reserve(static_cast<std::size_t>(grid_n) * grid_n);
  for (int i = 0; i < grid_n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / grid_n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < grid_n; ++j) {
      const double phi = -kPi + (2.0 * j + 1.0) * kPi / grid_n;
      pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
    }
  }
  return pts;
}

double phase_averaged_chaos(const KickParams& params, int grid_n, int n_kicks, Indicator indicator,
                            int workers) {
  if (grid_n < 50) throw DomainError("phase averages require grid_n >= 50");
  if (indicator == Indicator::lle && n_kicks < 100) throw DomainError("LLE requires n_kicks >= 100");
  if (indicator == Indicator::kse && n_kicks < 1000) throw DomainError("KSE requires n_kicks >= 1000");
  const auto pts = uniform_area_grid(grid_n);
  std::vector<double> vals(pts.size());
  parallel_for(pts.size(), workers, [&](std::size_t i) {
    const auto r = stretch_rates(pts[i], params, n_kicks);
    vals[i] = indicator == Indicator::lle ? r.lyapunov : r.ks;
  });
  double sum = 0.0;
  for (double v : vals) sum += v;
  return sum / static_cast<double>(vals.size());
}

SymmetryResiduals symmetry_residuals(const KickParams& params, const std::vector<PhasePoint>& samples) {
  if (samples.empty()) throw DomainError("symmetry check needs samples");
  SymmetryResiduals r;
  for (const auto& raw : samples) {
    const PhasePoint p = raw.normalized();
    const auto f = [&](const PhasePoint& q) { return map_step(q, params); };
    r.ry_commutes = std::max(r.ry_commutes, (ry_pi(f(p)) - f(ry_pi(p))).norm());
    r.rx_relation = std::max(r.rx_relation, (f(rx_pi(p)) - rx_pi(f(ry_pi(p)))).norm());
    r.f2_rx = std::max(r.f2_rx, (f(f(rx_pi(p))) - rx_pi(f(f(p)))).norm());
  }
  return r;
}

}  // namespace dkt
