#include <cstdlib>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "fcds/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Decentralized fountain-code storage simulator"};
  app.set_version_flag("--version", fcds::versionString());

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;

  std::string planPath, outDir = "out";
  std::optional<uint64_t> seedOverride;
  unsigned parallelism = hw;

  auto* run = app.add_subcommand("run", "Execute a plan file; writes results.csv + manifest.json");
  run->add_option("plan", planPath, "plan file (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", outDir, "output directory");
  uint64_t seedValue = 0;
  auto* seedOpt = run->add_option("--seed", seedValue, "override the plan's global seed");
  run->add_option("--parallel", parallelism, "worker threads for independent trials");

  std::string histPlan, histOut = "out";
  auto* hist = app.add_subcommand("estimate-hist",
                                  "Inference-only run; writes per-node estimates.csv");
  hist->add_option("plan", histPlan, "plan file (JSON)")->required()->check(CLI::ExistingFile);
  hist->add_option("--out", histOut, "output directory");
  unsigned histParallelism = hw;
  hist->add_option("--parallel", histParallelism, "worker threads for independent trials");

  app.require_subcommand(0, 1);
  CLI11_PARSE(app, argc, argv);

  // The environment may redirect output directories; nothing else.
  if (const char* env = std::getenv("FCDS_OUT_DIR")) {
    outDir = env;
    histOut = env;
  }

  if (run->parsed()) {
    if (*seedOpt) seedOverride = seedValue;
    return fcds::cmdRun(planPath, outDir, seedOverride, parallelism);
  }
  if (hist->parsed()) return fcds::cmdEstimateHist(histPlan, histOut, histParallelism);

  std::puts(app.help().c_str());
  return 0;
}
