#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "dkt/sweep.hpp"

namespace dkt {

namespace {

const std::map<std::string, JobKind>& job_table() {
  static const std::map<std::string, JobKind> t = {
      {"phase-portrait", JobKind::phase_portrait},
      {"lle-map", JobKind::lle_map},
      {"kse-scan", JobKind::kse_scan},
      {"fixed-points", JobKind::fixed_points},
      {"correlation-map", JobKind::correlation_map},
      {"dynamics", JobKind::dynamics},
      {"metastability-scan", JobKind::metastability_scan},
      {"fidelity-scan", JobKind::fidelity_scan},
      {"validate", JobKind::validate},
  };
  return t;
}

const std::map<std::string, Measure>& measure_table() {
  static const std::map<std::string, Measure> t = {
      {"linear", Measure::linear},
      {"vn", Measure::vn},
      {"discord", Measure::discord},
      {"concurrence", Measure::concurrence},
  };
  return t;
}

std::string fmt(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  while (b < e && *b == ' ') ++b;
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e || !std::isfinite(v)) {
    throw ConfigError(what + ": '" + s + "' is not a number");
  }
  return v;
}

int default_kicks(JobKind job) {
  switch (job) {
    case JobKind::phase_portrait:
      return 500;
    case JobKind::lle_map:
    case JobKind::kse_scan:
      return 1500;
    case JobKind::dynamics:
      return 200;
    case JobKind::fixed_points:
    case JobKind::validate:
      return 0;
    default:
      return 1000;
  }
}

int default_grid(JobKind job) {
  switch (job) {
    case JobKind::phase_portrait:
      return 8;
    case JobKind::lle_map:
    case JobKind::kse_scan:
      return 100;
    default:
      return 50;
  }
}

bool is_quantum(JobKind job) {
  return job == JobKind::correlation_map || job == JobKind::dynamics || job == JobKind::metastability_scan ||
         job == JobKind::fidelity_scan;
}

// Appends the config-file line that sets `key`, when one does.
std::string with_line(const std::string& message, const std::string& file) {
  if (file.empty()) return message;
  std::ifstream in(file);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    static const std::regex key_re(R"(^\s*([A-Za-z][A-Za-z0-9_-]*)\s*=)");
    std::smatch m;
    if (!std::regex_search(line, m, key_re)) continue;
    const std::string key = m[1].str();
    if (message.find(key) != std::string::npos) {
      return message + " (" + file + ":" + std::to_string(number) + ": " + line + ")";
    }
  }
  return message + " (in " + file + ")";
}

}  // namespace

const char* job_name(JobKind job) {
  for (const auto& [name, kind] : job_table()) {
    if (kind == job) return name.c_str();
  }
  return "?";
}

const char* measure_name(Measure m) {
  for (const auto& [name, kind] : measure_table()) {
    if (kind == m) return name.c_str();
  }
  return "?";
}

std::vector<double> Range::values() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return out;
}

Range parse_range(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw ConfigError("range '" + text + "' must look like lo:hi:count");
  Range r;
  r.lo = parse_double(text.substr(0, a), "range start");
  r.hi = parse_double(text.substr(a + 1, b - a - 1), "range end");
  const double n = parse_double(text.substr(b + 1), "range count");
  if (n < 1 || n != std::floor(n)) throw ConfigError("range '" + text + "': count must be a positive integer");
  r.count = static_cast<int>(n);
  if (r.hi < r.lo) throw ConfigError("range '" + text + "': end lies below start");
  if (r.count == 1 && r.hi != r.lo) throw ConfigError("range '" + text + "': a single point needs lo == hi");
  return r;
}

std::string SweepConfig::canonical() const {
  std::ostringstream s;
  s << "job=" << job_name(job) << '\n'
    << "k=" << fmt(kick.k) << '\n'
    << "kprime=" << fmt(kick.k_prime) << '\n'
    << "p=" << fmt(kick.p) << '\n';
  if (kr_range) s << "kr-range=" << fmt(kr_range->lo) << ':' << fmt(kr_range->hi) << ':' << kr_range->count << '\n';
  if (ktheta_range) {
    s << "ktheta-range=" << fmt(ktheta_range->lo) << ':' << fmt(ktheta_range->hi) << ':' << ktheta_range->count
      << '\n';
  }
  s << "j=" << fmt(j) << '\n'
    << "grid=" << grid << '\n'
    << "kicks=" << kicks << '\n'
    << "state=" << fmt(theta0) << ',' << fmt(phi0) << '\n'
    << "measure=" << measure_name(measure) << '\n';
  return s.str();
}

SweepConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Double kicked top sweeps", "dkt"};
  std::string job, state, measure, kr_range, ktheta_range;
  std::optional<double> k, kprime, kr, ktheta, p, j;
  std::optional<int> grid, kicks, workers;
  SweepConfig cfg;

  app.add_option("job", job, "phase-portrait | lle-map | kse-scan | fixed-points | correlation-map | dynamics | "
                             "metastability-scan | fidelity-scan | validate");
  auto* o_k = app.add_option("--k", k, "torsion strength about z");
  auto* o_kp = app.add_option("--kprime", kprime, "torsion strength about x");
  auto* o_kr = app.add_option("--kr", kr, "(k + k') / 2");
  auto* o_kt = app.add_option("--ktheta", ktheta, "(k - k') / 2");
  o_k->excludes(o_kr)->excludes(o_kt);
  o_kp->excludes(o_kr)->excludes(o_kt);
  app.add_option("--p", p, "precession angle about y");
  app.add_option("--kr-range", kr_range, "lo:hi:count");
  app.add_option("--ktheta-range", ktheta_range, "lo:hi:count");
  app.add_option("--j", j, "spin quantum number (half-integer)");
  app.add_option("--grid", grid, "cells per axis");
  app.add_option("--kicks", kicks, "number of kicks");
  app.add_option("--state", state, "theta,phi of the initial coherent state");
  app.add_option("--measure", measure, "linear | vn | discord | concurrence");
  app.add_option("--out", cfg.out, "output prefix for .csv and .json");
  app.add_option("--png", cfg.png, "optional heatmap path");
  app.add_option("--workers", workers, "worker threads (0 = all cores)");
  app.set_config("--config", "", "key = value file mirroring the flags");
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequest(app.help());
  } catch (const CLI::ParseError& e) {
    std::string file;
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == "--config") file = args[i + 1];
    }
    throw ConfigError(with_line(e.get_name() + ": " + e.what(), file));
  }

  if (job.empty()) throw ConfigError("missing job kind (first argument or 'job = ...' in the config file)");
  const auto jt = job_table().find(job);
  if (jt == job_table().end()) throw ConfigError("unknown job kind '" + job + "'");
  cfg.job = jt->second;

  const double pv = p.value_or(kPi / 2);
  if (k || kprime) {
    cfg.kick = transform_params(k.value_or(0.0), kprime.value_or(0.0), pv);
  } else {
    cfg.kick = from_rotated(kr.value_or(1.0), ktheta.value_or(0.0), pv);
  }

  const bool scan = cfg.job == JobKind::kse_scan || cfg.job == JobKind::metastability_scan ||
                    cfg.job == JobKind::fidelity_scan;
  if (!kr_range.empty()) {
    if (!scan) throw ConfigError("--kr-range: not used by " + job);
    cfg.kr_range = parse_range(kr_range);
  }
  if (!ktheta_range.empty()) {
    if (cfg.job != JobKind::kse_scan) throw ConfigError("--ktheta-range: only kse-scan sweeps ktheta");
    cfg.ktheta_range = parse_range(ktheta_range);
  }
  if ((cfg.job == JobKind::metastability_scan || cfg.job == JobKind::fidelity_scan) && !cfg.kr_range) {
    cfg.kr_range = Range{1.0, 2.0, 41};
  }

  cfg.grid = grid.value_or(default_grid(cfg.job));
  if (cfg.grid < 1) throw ConfigError("--grid: must be >= 1");
  cfg.kicks = kicks.value_or(default_kicks(cfg.job));
  if (cfg.kicks < 0 || (cfg.kicks < 1 && default_kicks(cfg.job) > 0)) throw ConfigError("--kicks: must be >= 1");

  cfg.j = j.value_or(1.0);
  const double two_j = 2.0 * cfg.j;
  if (is_quantum(cfg.job) && (two_j < 1.0 || two_j != std::floor(two_j))) {
    throw ConfigError("--j: must be a positive integer or half-integer");
  }

  if (!state.empty()) {
    const auto comma = state.find(',');
    if (comma == std::string::npos) throw ConfigError("--state: expected theta,phi");
    cfg.theta0 = parse_double(state.substr(0, comma), "--state theta");
    cfg.phi0 = parse_double(state.substr(comma + 1), "--state phi");
  }

  if (!measure.empty()) {
    const auto mt = measure_table().find(measure);
    if (mt == measure_table().end()) throw ConfigError("--measure: unknown measure '" + measure + "'");
    cfg.measure = mt->second;
    const bool two_qubit = cfg.measure == Measure::discord || cfg.measure == Measure::concurrence;
    if (cfg.job == JobKind::metastability_scan && two_qubit) {
      throw ConfigError("--measure: metastability-scan supports linear or vn");
    }
    if (cfg.job != JobKind::correlation_map && cfg.job != JobKind::metastability_scan) {
      throw ConfigError("--measure: not used by " + job);
    }
  }
  const bool needs_pair = cfg.job == JobKind::dynamics ||
                          (cfg.job == JobKind::correlation_map &&
                           (cfg.measure == Measure::discord || cfg.measure == Measure::concurrence));
  if (needs_pair && cfg.j < 1.0) throw ConfigError("--j: two-qubit measures need j >= 1");

  if (workers) {
    cfg.workers = *workers;
  } else if (const char* env = std::getenv("DKT_WORKERS")) {
    cfg.workers = static_cast<int>(parse_double(env, "DKT_WORKERS"));
  }
  if (cfg.workers < 0) throw ConfigError("--workers: must be >= 0");
  if (!cfg.png.empty() && cfg.out.empty()) throw ConfigError("--png: requires --out");
  return cfg;
}

SweepConfig parse_config(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_config(args);
}

}  // namespace dkt
