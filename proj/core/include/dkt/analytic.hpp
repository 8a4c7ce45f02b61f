#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dkt/params.hpp"

namespace dkt {

struct ClosedFormRequest {
  int n_qubits = 2;  // 2, 3 or 4
  KickParams kick;
  double theta0 = 0.0;
  double phi0 = 0.0;
  int n = 0;
};

// Single-qubit linear entropy after n kicks from the exact block solutions.
double closed_form_linear_entropy(const ClosedFormRequest& req);
std::vector<double> closed_form_series(int n_qubits, const KickParams& kick, double theta0, double phi0,
                                       int n_max);

// sin(n g) / sin(g), continued to n cos(n g) / cos(g) where sin(g) vanishes.
double sin_ratio(int n, double g);

// Rotation angle of the interacting block: cos g = sin(2kr/3)/2 (N=3), sin(kr)/2 (N=4).
double block_angle(int n_qubits, double k_r);

enum class AverageCase { general, polar, equatorial };

struct TimeAverage {
  double value = 0.0;             // infinite-time average of the exact dynamics
  std::optional<double> printed;  // published closed form, where one exists
  bool discrepancy = false;       // printed and value differ by more than 1e-9
  bool resonant = false;          // commensurate phases; the empirical mean may differ
  std::string note;
};

TimeAverage closed_form_time_average(int n_qubits, AverageCase c, const KickParams& kick, double theta0 = 0.0,
                                     double phi0 = 0.0);

// Average of the lifted entropy over all independent phases (exact trig quadrature).
double phase_averaged_linear_entropy(int n_qubits, const KickParams& kick, double theta0, double phi0);

// Published closed forms, evaluated verbatim.
double published_average_two_qubit(const KickParams& kick, double theta0, double phi0);
double published_average_two_qubit_equatorial(const KickParams& kick);
double published_average_three_qubit_polar(const KickParams& kick);
double published_average_three_qubit_equatorial(const KickParams& kick);
double published_average_four_qubit_polar(const KickParams& kick);
double published_average_four_qubit_equatorial(const KickParams& kick);

struct RationalAngle {
  long numerator = 0;
  long denominator = 1;  // angle = numerator / denominator * pi
  double value() const;
};

// Best p/q with q <= max_den and |x - p/q| <= tol, reduced.
std::optional<RationalAngle> rational_approx(double x_over_pi, long max_den = 1000, double tol = 1e-9);

struct PeriodicityVerdict {
  bool periodic = false;
  std::optional<RationalAngle> a;  // gamma = a pi (N=3,4), kr = a pi (N=2)
  std::optional<RationalAngle> b;  // kr / 4 = b pi (N=4)
};

PeriodicityVerdict periodicity_predicate(int n_qubits, double k_r, double tol = 1e-9);
PeriodicityVerdict periodicity_predicate(int n_qubits, const RationalAngle& k_r);

// Smallest p <= len/3 with max |s[n+p] - s[n]| <= tol.
std::optional<int> detect_period(const std::vector<double>& series, double tol);

}  // namespace dkt
