#include "dkt/analytic.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numeric>

#include "dkt/types.hpp"

namespace dkt {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
constexpr cplx kI{0.0, 1.0};
constexpr int kQuadrature = 24;

// Phase-dependent ingredients of the n-kick solution. For a concrete n they are
// cos(n g), sin(n g)/sin g, n mod period and the kr phases; for the infinite-time
// average they are sampled independently.
struct Lift {
  int r = 0;
  double cos_n = 1.0;
  double ratio_n = 0.0;
  cplx phase_half = 1.0;          // e^{-i n kr/2}
  cplx phase_three_quarter = 1.0; // e^{-3i n kr/4}
};

double entropy_two(const KickParams& kick, double th, double ph, const Lift& l) {
  const double kt = kick.k_theta;
  const double cr = std::array<double, 4>{1, 0, -1, 0}[l.r % 4];
  const double sr = std::array<double, 4>{0, 1, 0, -1}[l.r % 4];
  const cplx q = std::cos(th) * std::cos(ph) + kI * std::sin(ph);
  const cplx c0 = std::exp(-0.5 * kI * (kt + 2 * ph)) / kSqrt2 * (-sr * std::sin(th) + std::exp(0.5 * kI * kt) * cr * q);
  const cplx c1 = std::exp(-kI * ph) / kSqrt2 * (cr * std::sin(th) + std::exp(0.5 * kI * kt) * sr * q);
  const cplx c2 = l.phase_half * std::exp(-kI * ph) / kSqrt2 * (std::cos(ph) + kI * std::cos(th) * std::sin(ph));
  const double a = (c0 * std::conj(c2)).real();
  const double b = (c1 * std::conj(c2)).real();
  const double c = (c0 * std::conj(c1)).imag();
  return 0.5 - 2.0 * (a * a + b * b + c * c);
}

std::pair<cplx, cplx> alpha_beta(double x, double y, const Lift& l) {
  const cplx an = l.cos_n + 0.25 * kI * l.ratio_n * (3.0 * std::cos(y) - std::cos(x));
  const cplx bn = kSqrt3 / 4.0 * l.ratio_n * (std::cos(x) + std::cos(y) + 2.0 * kI * std::sin(y));
  return {an, bn};
}

double entropy_three(const KickParams& kick, double th, double ph, const Lift& l) {
  const auto [an, bn] = alpha_beta(2.0 * kick.k_r / 3.0, 2.0 * kick.k_theta / 3.0, l);
  const int r = l.r % 8;
  const double t1 = 1.0 / (2.0 * kSqrt2);
  const cplx t2 = std::exp(-0.25 * kI * (r * kPi + 6.0 * ph));
  const cplx t3 = std::exp(0.25 * kI * (5.0 * r * kPi - 6.0 * ph));
  const cplx t4 = std::cos(0.5 * (th + ph)) - kI * std::sin(0.5 * (th - ph));
  const cplx t5 = std::cos(0.5 * (th - ph)) + kI * std::sin(0.5 * (th + ph));
  const double t6 = std::cos(th) * std::cos(ph);
  const double t7 = std::sin(th);
  const double t9 = std::sin(th) + 2.0 * std::sin(ph);
  const double t10 = std::sin(th) - 2.0 * std::sin(ph);

  const cplx c0 = t1 * t2 * t4 * (2.0 * an * t6 - kSqrt3 * std::conj(bn) * t7 + kI * an * t9);
  const cplx c1 = t1 * t2 * t4 * (2.0 * bn * t6 + kSqrt3 * std::conj(an) * t7 + kI * bn * t9);
  const cplx c2 = t1 * t3 * t5 * (2.0 * an * t6 + kSqrt3 * std::conj(bn) * t7 - kI * an * t10);
  const cplx c3 = -t1 * t3 * t5 * (2.0 * bn * t6 - kSqrt3 * std::conj(an) * t7 - kI * bn * t10);

  const double p1 = (c0 * std::conj(c2)).real() + (c1 * std::conj(c3)).real() / 3.0;
  const cplx p12 = -kI / 3.0 * (c1 + c3) * std::conj(c1 - c3) + kSqrt3 / 6.0 * (c0 + c2) * std::conj(c1 + c3) -
                   1.0 / (2.0 * kSqrt3) * (c1 - c3) * std::conj(c0 - c2);
  return 0.5 - 2.0 * p1 * p1 - 2.0 * std::norm(p12);
}

double entropy_four(const KickParams& kick, double th, double ph, const Lift& l) {
  const auto [an, bn] = alpha_beta(kick.k_r, kick.k_theta, l);
  const int r = l.r % 4;
  const double cr = std::array<double, 4>{1, 0, -1, 0}[r];
  const double sr = std::array<double, 4>{0, 1, 0, -1}[r];
  const double ch = std::cos(0.5 * th), sh = std::sin(0.5 * th);
  const cplx e2 = std::exp(-2.0 * kI * ph);
  const cplx e4 = std::exp(-4.0 * kI * ph);

  const cplx i0 = (std::pow(ch, 4) + e4 * std::pow(sh, 4)) / kSqrt2;
  const cplx i1 = e2 * std::sin(th) * (std::cos(th) * std::cos(ph) + kI * std::sin(ph)) / kSqrt2;
  const cplx i2 = std::sqrt(3.0 / 8.0) * e2 * std::pow(std::sin(th), 2);
  const cplx i3 = (std::pow(ch, 4) - e4 * std::pow(sh, 4)) / kSqrt2;
  const cplx i4 = e2 * std::sin(th) * (std::cos(ph) + kI * std::cos(th) * std::sin(ph)) / kSqrt2;

  // (Phi0+, Phi2+) block, Phi1+ eigenphase -1, (Phi0-, Phi1-) block.
  const cplx plus = l.phase_half * std::array<cplx, 4>{1.0, -kI, -1.0, kI}[r];
  const cplx c0 = plus * (an * i0 + kI * std::conj(bn) * i2);
  const cplx c2 = plus * (kI * bn * i0 + std::conj(an) * i2);
  const cplx c1 = (r % 2 == 0 ? 1.0 : -1.0) * i1;
  const cplx tw = std::exp(0.75 * kI * kick.k_theta);
  const cplx c3 = l.phase_three_quarter * (cr * i3 - sr * std::conj(tw) * i4);
  const cplx c4 = l.phase_three_quarter * (sr * tw * i3 + cr * i4);

  const double p11 = 0.5 * (1.0 + 2.0 * (c0 * std::conj(c3)).real() + (c1 * std::conj(c4)).real());
  const cplx p12 = 0.25 * (c1 - c4) * std::conj(c3 - c0) + 0.25 * (c0 + c3) * std::conj(c1 + c4) +
                   kSqrt3 / 4.0 * c2 * std::conj(c4 - c1) + kSqrt3 / 4.0 * std::conj(c2) * (c4 + c1);
  return 0.5 - 2.0 * (p11 - 0.5) * (p11 - 0.5) - 2.0 * std::norm(p12);
}

double lifted_entropy(int n_qubits, const KickParams& kick, double th, double ph, const Lift& l) {
  switch (n_qubits) {
    case 2:
      return entropy_two(kick, th, ph, l);
    case 3:
      return entropy_three(kick, th, ph, l);
    case 4:
      return entropy_four(kick, th, ph, l);
    default:
      throw DomainError("closed forms exist for 2, 3 and 4 qubits only");
  }
}

void check_qubits(int n_qubits) {
  if (n_qubits < 2 || n_qubits > 4) throw DomainError("closed forms exist for 2, 3 and 4 qubits only");
}

bool is_rational_pi(double angle) { return rational_approx(angle / kPi, 1000, 1e-12).has_value(); }

double derived_average_two_qubit(const KickParams& kick, double t, double p, double last_sign) {
  using std::cos;
  using std::sin;
  const double k = kick.k_theta;
  return (106 + 8 * cos(2 * t) + 14 * cos(4 * t) - 4 * cos(2 * t - 4 * p) + cos(4 * t - 4 * p) + 6 * cos(4 * p) +
          cos(4 * t + 4 * p)) / 1024.0 +
         (32 * cos(2 * k) * std::pow(sin(t), 2) * (cos(2 * p) * (3 + cos(2 * t)) - 2 * std::pow(sin(t), 2)) -
          4 * cos(2 * t + 4 * p)) / 1024.0 +
         std::pow(3 + cos(2 * t) + 2 * cos(2 * p) * std::pow(sin(t), 2), 2) / 128.0 +
         last_sign * sin(2 * k) * sin(t) * sin(2 * t) * sin(2 * p) / 16.0;
}

double three_qubit_polar(const KickParams& kick, double cross) {
  using std::cos;
  const double r = kick.k_r, t = kick.k_theta;
  const double den = 64.0 * std::pow(7.0 + cos(4 * r / 3), 2);
  return (1026 + 13 * cos(8 * r / 3) + (304 - 52 * cos(4 * t / 3)) * cos(4 * r / 3) - 112 * cos(4 * t / 3) +
          cross * cos(2 * r / 3) * cos(2 * t / 3) * (-2 + 9 * cos(4 * t / 3) + cos(4 * r / 3)) -
          27 * cos(8 * t / 3)) / den;
}

double three_qubit_equatorial(const KickParams& kick, double cross) {
  using std::cos;
  const double r = kick.k_r, t = kick.k_theta;
  const double den = 32.0 * std::pow(7.0 + cos(4 * r / 3), 2);
  return (410 + 5 * cos(8 * r / 3) + 4 * (28 - 9 * cos(4 * t / 3)) * cos(4 * r / 3) - 144 * cos(4 * t / 3) +
          cross * cos(2 * r / 3) * cos(2 * t / 3) * (10 + 9 * cos(4 * t / 3) + cos(4 * r / 3)) -
          27 * cos(8 * t / 3)) / den;
}

}  // namespace

double sin_ratio(int n, double g) {
  const double s = std::sin(g);
  if (std::abs(s) < 1e-12) return n * std::cos(n * g) / std::cos(g);
  return std::sin(n * g) / s;
}

double block_angle(int n_qubits, double k_r) {
  if (n_qubits == 3) return std::acos(0.5 * std::sin(2.0 * k_r / 3.0));
  if (n_qubits == 4) return std::acos(0.5 * std::sin(k_r));
  throw DomainError("block angle defined for 3 and 4 qubits");
}

double closed_form_linear_entropy(const ClosedFormRequest& req) {
  check_qubits(req.n_qubits);
  if (req.n < 0) throw DomainError("kick index must be non-negative");
  Lift l;
  l.r = req.n % 8;
  if (req.n_qubits > 2) {
    const double g = block_angle(req.n_qubits, req.kick.k_r);
    l.cos_n = std::cos(req.n * g);
    l.ratio_n = sin_ratio(req.n, g);
  }
  l.phase_half = std::polar(1.0, -0.5 * req.n * req.kick.k_r);
  l.phase_three_quarter = std::polar(1.0, -0.75 * req.n * req.kick.k_r);
  return lifted_entropy(req.n_qubits, req.kick, req.theta0, req.phi0, l);
}

std::vector<double> closed_form_series(int n_qubits, const KickParams& kick, double theta0, double phi0,
                                       int n_max) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) out.push_back(closed_form_linear_entropy({n_qubits, kick, theta0, phi0, n}));
  return out;
}

double phase_averaged_linear_entropy(int n_qubits, const KickParams& kick, double theta0, double phi0) {
  check_qubits(n_qubits);
  const int period = n_qubits == 3 ? 8 : 4;
  const int n_psi = n_qubits == 2 ? 1 : kQuadrature;
  const int n_chi = n_qubits == 3 ? 1 : kQuadrature;
  const double g = n_qubits == 2 ? kPi / 2 : block_angle(n_qubits, kick.k_r);
  double sum = 0.0;
  for (int r = 0; r < period; ++r) {
    for (int a = 0; a < n_psi; ++a) {
      const double psi = 2.0 * kPi * a / n_psi;
      for (int b = 0; b < n_chi; ++b) {
        const double chi = 2.0 * kPi * b / n_chi;
        Lift l;
        l.r = r;
        l.cos_n = std::cos(psi);
        l.ratio_n = std::sin(psi) / std::sin(g);
        // chi stands for n kr / 4 (N=4) or n kr / 2 (N=2)
        l.phase_half = n_qubits == 2 ? std::polar(1.0, -chi) : std::polar(1.0, -2.0 * chi);
        l.phase_three_quarter = std::polar(1.0, -3.0 * chi);
        sum += lifted_entropy(n_qubits, kick, theta0, phi0, l);
      }
    }
  }
  return sum / (static_cast<double>(period) * n_psi * n_chi);
}

double published_average_two_qubit(const KickParams& kick, double theta0, double phi0) {
  return derived_average_two_qubit(kick, theta0, phi0, 1.0);
}

double published_average_two_qubit_equatorial(const KickParams& kick) {
  return 0.25 * std::pow(std::sin(0.5 * kick.k_theta), 2);
}

double published_average_three_qubit_polar(const KickParams& kick) { return three_qubit_polar(kick, 8.0); }

double published_average_three_qubit_equatorial(const KickParams& kick) {
  return three_qubit_equatorial(kick, 8.0);
}

double published_average_four_qubit_polar(const KickParams& kick) {
  return (160.0 + 25.0 * std::cos(2 * kick.k_r) - 9.0 * std::cos(2 * kick.k_theta)) /
         (64.0 * (7.0 + std::cos(2 * kick.k_r)));
}

double published_average_four_qubit_equatorial(const KickParams& kick) {
  return 3.0 / 8.0 - std::pow(std::cos(kick.k_r) + 3.0 * std::cos(kick.k_theta), 2) /
                         (16.0 * (7.0 + std::cos(2 * kick.k_r)));
}

TimeAverage closed_form_time_average(int n_qubits, AverageCase c, const KickParams& kick, double theta0,
                                     double phi0) {
  check_qubits(n_qubits);
  if (c == AverageCase::polar) {
    theta0 = 0.0;
    phi0 = 0.0;
  } else if (c == AverageCase::equatorial) {
    theta0 = kPi / 2;
    phi0 = -kPi / 2;
  }

  TimeAverage out;
  switch (n_qubits) {
    case 2:
      out.value = derived_average_two_qubit(kick, theta0, phi0, -1.0);
      out.printed = c == AverageCase::equatorial ? published_average_two_qubit_equatorial(kick)
                                                 : published_average_two_qubit(kick, theta0, phi0);
      out.resonant = is_rational_pi(kick.k_r);
      break;
    case 3:
      if (c == AverageCase::polar) {
        out.value = three_qubit_polar(kick, 16.0);
        out.printed = published_average_three_qubit_polar(kick);
      } else if (c == AverageCase::equatorial) {
        out.value = three_qubit_equatorial(kick, -16.0);
        out.printed = published_average_three_qubit_equatorial(kick);
      } else {
        out.value = phase_averaged_linear_entropy(3, kick, theta0, phi0);
      }
      out.resonant = is_rational_pi(block_angle(3, kick.k_r));
      break;
    case 4:
      if (c == AverageCase::polar) {
        out.value = published_average_four_qubit_polar(kick);
        out.printed = out.value;
      } else if (c == AverageCase::equatorial) {
        out.value = published_average_four_qubit_equatorial(kick);
        out.printed = out.value;
      } else {
        out.value = phase_averaged_linear_entropy(4, kick, theta0, phi0);
      }
      out.resonant = is_rational_pi(block_angle(4, kick.k_r)) || is_rational_pi(kick.k_r);
      break;
  }
  out.discrepancy = out.printed && std::abs(*out.printed - out.value) > 1e-9;
  if (out.resonant) out.note = "resonant; formula may not equal the empirical average";
  if (out.discrepancy) {
    if (!out.note.empty()) out.note += "; ";
    out.note += "published closed form disagrees with the exact dynamics";
  }
  return out;
}

double RationalAngle::value() const { return static_cast<double>(numerator) / denominator * kPi; }

std::optional<RationalAngle> rational_approx(double x, long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  for (long q = 1; q <= max_den; ++q) {
    const double p = std::round(x * q);
    if (std::abs(x - p / q) <= tol) {
      const long pn = static_cast<long>(p);
      const long g = std::gcd(std::abs(pn), q);
      return RationalAngle{pn / (g == 0 ? 1 : g), q / (g == 0 ? 1 : g)};
    }
  }
  return std::nullopt;
}

PeriodicityVerdict periodicity_predicate(int n_qubits, double k_r, double tol) {
  check_qubits(n_qubits);
  PeriodicityVerdict v;
  if (n_qubits == 2) {
    v.a = rational_approx(k_r / kPi, 1000, tol);
    v.periodic = v.a.has_value();
    return v;
  }
  const double g = block_angle(n_qubits, k_r);
  v.a = rational_approx(g / kPi, 1000, tol);
  bool ok = v.a.has_value();
  if (ok) {
    const double a = static_cast<double>(v.a->numerator) / v.a->denominator;
    ok = a >= 1.0 / 3.0 - tol && a <= 2.0 / 3.0 + tol;
  }
  if (n_qubits == 4) {
    v.b = rational_approx(k_r / (4.0 * kPi), 1000, tol);
    ok = ok && v.b.has_value();
  }
  v.periodic = ok;
  return v;
}

PeriodicityVerdict periodicity_predicate(int n_qubits, const RationalAngle& k_r) {
  if (k_r.denominator <= 0) throw DomainError("rational angle needs a positive denominator");
  check_qubits(n_qubits);
  if (n_qubits == 2) {
    const long g = std::gcd(std::abs(k_r.numerator), k_r.denominator);
    PeriodicityVerdict v;
    v.a = RationalAngle{k_r.numerator / g, k_r.denominator / g};
    v.periodic = true;
    return v;
  }
  return periodicity_predicate(n_qubits, k_r.value());
}

std::optional<int> detect_period(const std::vector<double>& series, double tol) {
  const int len = static_cast<int>(series.size());
  for (int p = 1; p <= len / 3; ++p) {
    double worst = 0.0;
    for (int n = 0; n + p < len && worst <= tol; ++n) worst = std::max(worst, std::abs(series[n + p] - series[n]));
    if (worst <= tol) return p;
  }
  return std::nullopt;
}

}  // namespace dkt
