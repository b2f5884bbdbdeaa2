#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fcds/csv_io.hpp"
#include "fcds/graph.hpp"
#include "fcds/ltcds.hpp"
#include "fcds/rcds.hpp"

namespace fcds {

enum class Algorithm { LtcdsOracle, LtcdsEstimated, Rcds };
enum class PlanMode { PsCurve, TransmissionScaling };

const char* algorithmName(Algorithm a);

struct SweepSpec {
  enum class Param { C1, C2 };
  Param param = Param::C1;
  std::vector<double> values;
};

struct DumpFlags {
  bool graph = false;
  bool estimates = false;
  bool storage = false;
  bool distribution = false;
  bool trace = false;
};

/// Invalid plan content; `field` names the first offending entry.
class PlanError : public std::runtime_error {
public:
  PlanError(std::string field, const std::string& message)
      : std::runtime_error("plan field '" + field + "': " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

struct ExperimentPlan {
  Algorithm algorithm = Algorithm::LtcdsOracle;
  PlanMode mode = PlanMode::PsCurve;
  uint32_t n = 0;
  uint32_t k = 0;
  double lambda = 40.0 / 9.0;
  double c1 = 3.0;
  uint32_t c2 = 50;
  double c3 = -1.0;  // < 0: use c1
  OmegaConfig omega;
  uint32_t m = 0;  // rcds; 0 = ceil(1.1 k)
  std::vector<double> ldpcProbs = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};  // probs of b = 1,2,...
  std::vector<double> etaGrid = {1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.7, 2.0, 2.5};
  uint32_t subsetsPerEta = 200;
  uint32_t seeds = 10;
  uint64_t seed = 1;
  std::optional<SweepSpec> sweep;
  std::vector<uint32_t> nGrid;  // transmission-scaling mode
  double kRatio = 0.1;          // transmission-scaling mode
  bool payloadCheck = false;
  DumpFlags dumps;

  double effectiveC3() const { return c3 < 0.0 ? c1 : c3; }
};

/// Throws PlanError on the first invalid field.
void validatePlan(const ExperimentPlan& plan);

struct ResultRow {
  std::string algorithm;
  uint32_t n = 0;
  uint32_t k = 0;
  double c1 = 0.0;
  uint32_t c2 = 0;
  double eta = 0.0;
  double ps = 0.0;
  double stderrPs = 0.0;
  double meanTransmissions = 0.0;
  uint32_t maxQueueLen = 0;
};

void writeResultsCsv(const std::vector<ResultRow>& rows, std::ostream& os);

struct TrialOutput {
  std::vector<uint32_t> storageSizes;  // |yIds| per node
  uint64_t transmissions = 0;
  uint32_t maxQueueLen = 0;
  uint32_t forcedInference = 0;
  std::vector<uint32_t> successPerEta;       // successes out of subsetsPerEta
  std::vector<EstimateRow> estimates;        // estimated algorithm only
};

/// Heavyweight per-trial artifacts, captured on request for file dumps.
struct TrialArtifacts {
  Network net;
  std::vector<StorageDumpRow> storage;
  std::vector<std::pair<uint32_t, std::vector<uint32_t>>> precodeMap;
};

TrialOutput runTrial(const ExperimentPlan& plan, uint32_t trialIndex,
                     TrialArtifacts* artifacts = nullptr, TraceFn trace = {});

/// All trials of the plan; `parallelism` only affects wall-clock, results are
/// a pure function of (plan.seed, trialIndex).
std::vector<TrialOutput> runTrials(const ExperimentPlan& plan, unsigned parallelism = 1);

std::vector<ResultRow> runPlan(const ExperimentPlan& plan, unsigned parallelism = 1);

std::vector<ResultRow> sweepC1(const ExperimentPlan& base, const std::vector<double>& values,
                               unsigned parallelism = 1);
std::vector<ResultRow> sweepC2(const ExperimentPlan& base, const std::vector<uint32_t>& values,
                               unsigned parallelism = 1);

struct ScalingRow {
  uint32_t n = 0;
  uint32_t k = 0;
  double meanTransmissions = 0.0;
  double normalized = 0.0;  // meanTransmissions / (k n ln n)
};

std::vector<ScalingRow> transmissionScaling(const ExperimentPlan& base,
                                            const std::vector<uint32_t>& nGrid, double kRatio,
                                            unsigned parallelism = 1);
void writeScalingCsv(const std::vector<ScalingRow>& rows, std::ostream& os);

struct InferenceRunStats {
  std::vector<EstimateRow> rows;
  uint32_t forced = 0;
};

/// Inference-only trials (packets walk, nodes record, nothing retires); rows
/// pooled across seeds for histogram reproduction.
InferenceRunStats runEstimateHist(const ExperimentPlan& plan, unsigned parallelism = 1);

}  // namespace fcds
