#include <cstdio>
#include <iostream>

#include "dkt/parallel.hpp"
#include "dkt/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBreach = 3;
constexpr int kExitResource = 4;

void write_failure(const dkt::SweepConfig& cfg, const std::string& why) {
  if (cfg.out.empty()) return;
  dkt::GridResult r;
  r.config = cfg.canonical();
  r.manifest = dkt::start_manifest(cfg);
  r.manifest.status = "failed: " + why;
  try {
    dkt::write_outputs(r, {"", cfg.out + ".json", ""});
  } catch (const std::exception& e) {
    std::cerr << "dkt: " << e.what() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  dkt::SweepConfig cfg;
  try {
    cfg = dkt::parse_config(argc, argv);
  } catch (const dkt::HelpRequest& h) {
    std::cout << h.what();
    return 0;
  } catch (const dkt::ConfigError& e) {
    std::cerr << "dkt: config error: " << e.what() << '\n';
    return kExitConfig;
  }

  dkt::GridResult result;
  try {
    std::cerr << "dkt: running " << dkt::job_name(cfg.job) << " on " << dkt::resolve_workers(cfg.workers)
              << " worker(s)\n";
    result = dkt::execute_sweep(cfg);
  } catch (const dkt::ResourceError& e) {
    std::cerr << "dkt: resource error: " << e.what() << '\n';
    write_failure(cfg, e.what());
    return kExitResource;
  } catch (const dkt::DomainError& e) {
    std::cerr << "dkt: invalid request: " << e.what() << '\n';
    write_failure(cfg, e.what());
    return kExitConfig;
  }

  try {
    const auto paths = dkt::output_paths(cfg);
    if (paths.csv.empty()) {
      std::cout << dkt::format_csv(result);
    } else {
      dkt::write_outputs(result, paths);
    }
  } catch (const dkt::ResourceError& e) {
    std::cerr << "dkt: " << e.what() << '\n';
    return kExitResource;
  } catch (const dkt::DomainError& e) {
    std::cerr << "dkt: " << e.what() << '\n';
    return kExitConfig;
  }

  std::fprintf(stderr, "dkt: %zu cell(s), %llu kick(s), %.3f s\n", result.cell_count(),
               static_cast<unsigned long long>(result.manifest.total_kicks), result.manifest.elapsed_seconds);

  if (cfg.job == dkt::JobKind::validate) {
    bool ok = true;
    for (std::size_t i = 0; i < result.cell_count(); ++i) {
      const bool pass = result.at(i, 2) == 1.0;
      ok = ok && pass;
      std::fprintf(stderr, "  %s  %-58s residual %.3e  tol %.0e\n", pass ? "PASS" : "FAIL",
                   result.manifest.extra[i].second.c_str(), result.at(i, 0), result.at(i, 1));
    }
    if (!ok) return kExitBreach;
  }
  return 0;
}
