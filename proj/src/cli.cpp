#include "fcds/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include "fcds/decode.hpp"
#include "fcds/plan_io.hpp"
#include "fcds/version.hpp"

namespace fcds {

namespace {

namespace fs = std::filesystem;

std::ofstream openOut(const fs::path& dir, const char* name) {
  std::ofstream os(dir / name, std::ios::binary);  // LF line endings everywhere
  if (!os) throw std::runtime_error(std::string("cannot write ") + name);
  return os;
}

void writeManifest(const ExperimentPlan& plan, const fs::path& dir) {
  auto os = openOut(dir, "manifest.json");
  os << makeManifest(plan).dump(2) << '\n';
}

void writeDumps(const ExperimentPlan& plan, const fs::path& dir, unsigned parallelism) {
  TrialArtifacts artifacts;
  TraceFn trace;
  std::ofstream traceOs;
  if (plan.dumps.trace) {
    traceOs = openOut(dir, "trace.csv");
    traceOs << "round,nodeId,sourceId,hopCounter,event\n";
    trace = [&traceOs](uint64_t round, uint32_t node, const Packet& pkt, const char* event) {
      traceOs << round << ',' << node << ',' << pkt.sourceId << ',' << pkt.hopCount << ','
              << event << '\n';
    };
  }
  (void)parallelism;
  runTrial(plan, 0, &artifacts, trace);  // trial 0 is the dump specimen
  if (plan.dumps.graph) {
    auto edges = openOut(dir, "graph-edges.txt");
    writeEdgeList(artifacts.net, edges);
    auto pos = openOut(dir, "graph-positions.csv");
    writePositionsCsv(artifacts.net, pos);
  }
  if (plan.dumps.storage) {
    auto os = openOut(dir, "storage.csv");
    writeStorageCsv(artifacts.storage, os);
    if (plan.algorithm == Algorithm::Rcds) {
      auto pm = openOut(dir, "precode.csv");
      writePrecodeMapCsv(artifacts.precodeMap, pm);
    }
  }
  if (plan.dumps.distribution) {
    auto os = openOut(dir, "distribution.csv");
    writeDistributionCsv(makeOmega(plan.omega, plan.k), os);
  }
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const PlanError& e) {
    std::fprintf(stderr, "fcds: invalid plan: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fcds: error: %s\n", e.what());
    return 2;
  }
}

}  // namespace

int cmdRun(const std::string& planPath, const std::string& outDir,
           std::optional<uint64_t> seedOverride, unsigned parallelism) {
  return guarded([&]() -> int {
    ExperimentPlan plan;
    try {
      plan = parsePlanFile(planPath);
    } catch (const PlanError&) {
      throw;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "fcds: %s\n", e.what());
      return 1;
    }
    if (seedOverride) plan.seed = *seedOverride;

    const fs::path dir(outDir);
    fs::create_directories(dir);
    writeManifest(plan, dir);

    if (plan.mode == PlanMode::TransmissionScaling) {
      const auto rows = transmissionScaling(plan, plan.nGrid, plan.kRatio, parallelism);
      auto os = openOut(dir, "scaling.csv");
      writeScalingCsv(rows, os);
      return 0;
    }

    std::vector<ResultRow> rows;
    if (plan.sweep) {
      if (plan.sweep->param == SweepSpec::Param::C1) {
        rows = sweepC1(plan, plan.sweep->values, parallelism);
      } else {
        std::vector<uint32_t> c2s;
        for (double v : plan.sweep->values) c2s.push_back(static_cast<uint32_t>(v));
        rows = sweepC2(plan, c2s, parallelism);
      }
    } else {
      rows = runPlan(plan, parallelism);
    }
    {
      auto os = openOut(dir, "results.csv");
      writeResultsCsv(rows, os);
    }

    if (plan.dumps.estimates && plan.algorithm == Algorithm::LtcdsEstimated && !plan.sweep) {
      const auto trials = runTrials(plan, parallelism);
      std::vector<EstimateRow> pooled;
      for (const auto& t : trials)
        pooled.insert(pooled.end(), t.estimates.begin(), t.estimates.end());
      auto os = openOut(dir, "estimates.csv");
      writeEstimatesCsv(pooled, os);
    }
    if (plan.dumps.graph || plan.dumps.storage || plan.dumps.distribution || plan.dumps.trace)
      writeDumps(plan, dir, parallelism);
    return 0;
  });
}

int cmdEstimateHist(const std::string& planPath, const std::string& outDir, unsigned parallelism) {
  return guarded([&]() -> int {
    ExperimentPlan plan;
    try {
      plan = parsePlanFile(planPath);
    } catch (const PlanError&) {
      throw;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "fcds: %s\n", e.what());
      return 1;
    }
    if (plan.c2 < 2) throw PlanError("c2", "estimate-hist needs c2 >= 2");

    const fs::path dir(outDir);
    fs::create_directories(dir);
    writeManifest(plan, dir);

    const auto stats = runEstimateHist(plan, parallelism);
    if (stats.forced > 0)
      std::fprintf(stderr, "fcds: warning: %u node(s) hit the round limit before finishing inference\n",
                   stats.forced);
    auto os = openOut(dir, "estimates.csv");
    writeEstimatesCsv(stats.rows, os);
    return 0;
  });
}

const char* versionString() { return "fcds " FCDS_VERSION " (plan format 1)"; }

}  // namespace fcds
