#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "radgas/acceptance.hpp"
#include "radgas/errors.hpp"
#include "radgas/io.hpp"
#include "radgas/runner.hpp"
#include "radgas/scenario.hpp"

namespace {

// RADGAS_THREADS sets the OpenMP worker count; unset keeps the runtime default.
void apply_thread_env() {
  const char* v = std::getenv("RADGAS_THREADS");
  if (!v || !*v) return;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) {
    std::cerr << "ignoring RADGAS_THREADS='" << v << "' (want a positive integer)\n";
    return;
  }
  omp_set_num_threads(static_cast<int>(n));
}

int accept(const std::string& scenario_path, const radgas::RunOptions& opt) {
  std::filesystem::path out = opt.out_dir.empty() ? std::filesystem::path("out/accept") : std::filesystem::path(opt.out_dir);
  if (!scenario_path.empty()) {
    const auto s = radgas::load_scenario(scenario_path);
    if (opt.out_dir.empty()) out = s.output_dir;
  }
  if (opt.dry_run) {
    std::cout << "acceptance suite would write " << (out / "accept_report.json").string() << "\n";
    return radgas::kExitOk;
  }
  radgas::AcceptanceOptions ao;
  ao.on_result = [](const radgas::CriterionResult& r) {
    std::cout << "criterion " << r.id << " " << (r.pass ? "PASS" : "FAIL") << " " << r.title << ": " << r.summary
              << std::endl;
  };
  const auto report = radgas::run_acceptance(ao);
  radgas::write_atomic(out / "accept_report.json", report.to_json());
  std::cout << "report: " << (out / "accept_report.json").string() << "\n";
  return report.all_pass() ? radgas::kExitOk : radgas::kExitPropertyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();
  CLI::App app{"radgas: half-space radiating gas solver and rate checks"};
  app.require_subcommand(1);

  std::string scenario;
  radgas::RunOptions opt;
  auto add_common = [&](CLI::App* sub, bool scenario_required) {
    auto* pos = sub->add_option("scenario", scenario, "scenario file");
    if (scenario_required) pos->required()->check(CLI::ExistingFile);
    else pos->check(CLI::ExistingFile);
    sub->add_flag("--dry-run", opt.dry_run, "validate only, write nothing");
    sub->add_option("--out", opt.out_dir, "output directory (overrides the scenario)");
    sub->add_flag("--quiet", opt.quiet, "suppress progress output");
  };
  auto* profiles = app.add_subcommand("profiles", "smoothed profile fields and decay fits");
  auto* run = app.add_subcommand("run", "integrate a scenario and fit decay rates");
  auto* converge = app.add_subcommand("converge", "grid-refinement study");
  auto* accept_cmd = app.add_subcommand("accept", "run the acceptance suite");
  add_common(profiles, true);
  add_common(run, true);
  add_common(converge, true);
  add_common(accept_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every real parse error is an invalid invocation.
    return app.exit(e) == 0 ? radgas::kExitOk : radgas::kExitInvalid;
  }

  try {
    if (accept_cmd->parsed()) return accept(scenario, opt);
    const auto s = radgas::load_scenario(scenario);
    if (profiles->parsed()) return radgas::run_profiles(s, opt);
    if (run->parsed()) return radgas::run_scenario(s, opt);
    if (converge->parsed()) return radgas::run_converge(s, opt);
  } catch (const radgas::ScenarioError& e) {
    std::cerr << scenario << ": " << e.what() << "\n";
    return radgas::kExitInvalid;
  } catch (const radgas::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return radgas::kExitInvalid;
  }
  return radgas::kExitOk;
}
