#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace fcds {

struct PeelResult {
  std::vector<uint32_t> recovered;  // sorted ids
  bool success = false;
};

/** Ripple/peeling decode: repeatedly take a stored set of size one, declare
 *  its element recovered, and remove it from every set. Works on id sets
 *  (symbolic XOR); each input set must be duplicate-free. The recovered set
 *  does not depend on the order singletons are taken in. success means
 *  exactly `k` ids were recovered.
 */
PeelResult peel(const std::vector<std::vector<uint32_t>>& storedSets, uint32_t k);

using PrecodeMap = std::unordered_map<uint32_t, std::vector<uint32_t>>;

struct TwoStageResult {
  std::vector<uint32_t> recoveredSources;  // sorted
  std::vector<uint32_t> recoveredPrecode;  // sorted
  bool success = false;
};

/** Two-stage decode for pre-coded storage. Stage 1 peels at the pre-code
 *  level; the substitution stage expands every queried set through the
 *  pre-code map (symmetric difference of the constituent source sets, since
 *  the stored values are XORs) and peels over sources, which carries the
 *  stage-1/stage-2 exchange to its fixed point. A pre-code id counts as
 *  recovered when stage 1 produced it or all of its sources were recovered.
 *  Throws when a referenced pre-code id is missing from the map.
 */
TwoStageResult peelTwoStage(const std::vector<std::vector<uint32_t>>& storedSets,
                            const PrecodeMap& map, uint32_t k, uint32_t m);

}  // namespace fcds
