#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace fcds {

/// Executes a plan file and writes results.csv, manifest.json, and any
/// requested dumps into outDir. Exit codes: 0 ok, 1 invalid plan (message
/// names the first bad field), 2 simulation/runtime error.
int cmdRun(const std::string& planPath, const std::string& outDir,
           std::optional<uint64_t> seedOverride, unsigned parallelism);

/// Inference-only run; writes estimates.csv (and manifest.json) into outDir.
int cmdEstimateHist(const std::string& planPath, const std::string& outDir,
                    unsigned parallelism);

const char* versionString();

}  // namespace fcds
