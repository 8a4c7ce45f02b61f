#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dkt/params.hpp"

namespace dkt {

enum class JobKind {
  phase_portrait,
  lle_map,
  kse_scan,
  fixed_points,
  correlation_map,
  dynamics,
  metastability_scan,
  fidelity_scan,
  validate,
};

enum class Measure { linear, vn, discord, concurrence };

const char* job_name(JobKind job);
const char* measure_name(Measure m);

// Inclusive, evenly spaced: lo, ..., hi with `count` points.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;
  std::vector<double> values() const;
};

Range parse_range(const std::string& text);  // "a:b:n"

struct SweepConfig {
  JobKind job = JobKind::validate;
  KickParams kick = from_rotated(1.0, 0.0);
  std::optional<Range> kr_range;
  std::optional<Range> ktheta_range;
  double j = 1.0;
  int grid = 50;
  int kicks = 1000;
  double theta0 = kPi / 2;
  double phi0 = -kPi / 2;
  Measure measure = Measure::vn;
  std::string out;  // output prefix; empty keeps results in memory
  std::string png;
  int workers = 0;  // 0 means hardware concurrency

  // Canonical key=value lines; identical configs give identical text.
  std::string canonical() const;
};

// Thrown by parse_config when --help is given; what() holds the usage text.
struct HelpRequest : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts argv in the form `<job> [flags]` or `--config <file> [flags]`.
// Throws ConfigError with the offending flag or config line.
SweepConfig parse_config(int argc, const char* const* argv);
SweepConfig parse_config(const std::vector<std::string>& args);

struct RunManifest {
  std::string config_hash;  // FNV-1a 64 of the canonical config, hex
  std::string version;
  std::string timestamp;    // UTC, ISO 8601
  int workers = 1;
  std::uint64_t total_kicks = 0;
  double elapsed_seconds = 0.0;
  std::string status = "ok";
  std::vector<std::pair<std::string, std::string>> extra;
};

struct Axis {
  std::string name;
  std::vector<double> values;
};

// Row-major over the axes; each cell holds fields.size() values.
struct GridResult {
  std::vector<Axis> axes;
  std::vector<std::string> fields;
  std::vector<double> values;
  std::string config;
  RunManifest manifest;

  std::size_t cell_count() const;
  double at(std::size_t cell, std::size_t field = 0) const { return values[cell * fields.size() + field]; }
};

std::uint64_t fnv1a(const std::string& text);
// Hash, version, timestamp and worker count for a run of `config`.
RunManifest start_manifest(const SweepConfig& config);
std::string toolkit_version();

// Axis values for correlation and Lyapunov maps: cell centres, theta in [0, pi], phi in (-pi, pi].
std::vector<double> theta_centres(int n);
std::vector<double> phi_centres(int n);

// Index of the largest forward difference, reported at the midpoint of that step.
double steepest_rise(const std::vector<double>& x, const std::vector<double>& y);

GridResult execute_sweep(const SweepConfig& config);

struct OutputPaths {
  std::string csv;
  std::string manifest;
  std::string png;
};

OutputPaths output_paths(const SweepConfig& config);
std::string format_csv(const GridResult& result);
std::string format_manifest(const GridResult& result);
void write_outputs(const GridResult& result, const OutputPaths& paths);
void write_png(const GridResult& result, const std::string& path);

struct ValidationCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return residual <= tolerance; }
};

// Analytic-versus-numeric oracle suite used by the validate job.
std::vector<ValidationCheck> run_validation(int workers);

}  // namespace dkt
