#include "fcds/decode.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace fcds {

PeelResult peel(const std::vector<std::vector<uint32_t>>& storedSets, uint32_t k) {
  // Dense-remap ids so incidence lists and the xor trick work on small ints.
  std::unordered_map<uint32_t, uint32_t> toDense;
  std::vector<uint32_t> toOrig;
  auto denseOf = [&](uint32_t id) {
    auto [it, fresh] = toDense.try_emplace(id, static_cast<uint32_t>(toOrig.size()));
    if (fresh) toOrig.push_back(id);
    return it->second;
  };

  const size_t nSets = storedSets.size();
  std::vector<uint32_t> remaining(nSets, 0);
  std::vector<uint32_t> xorAcc(nSets, 0);  // XOR of remaining dense ids
  std::vector<std::vector<uint32_t>> incidence;
  std::vector<uint32_t> ready;  // sets currently of size one
  for (size_t j = 0; j < nSets; ++j) {
    for (uint32_t id : storedSets[j]) {
      const uint32_t d = denseOf(id);
      if (d >= incidence.size()) incidence.resize(d + 1);
      incidence[d].push_back(static_cast<uint32_t>(j));
      ++remaining[j];
      xorAcc[j] ^= d;
    }
    if (remaining[j] == 1) ready.push_back(static_cast<uint32_t>(j));
  }

  std::vector<uint8_t> recovered(toOrig.size(), 0);
  PeelResult result;
  while (!ready.empty()) {
    const uint32_t j = ready.back();
    ready.pop_back();
    if (remaining[j] != 1) continue;  // shrank since it was queued
    const uint32_t d = xorAcc[j];
    recovered[d] = 1;
    result.recovered.push_back(toOrig[d]);
    for (uint32_t t : incidence[d]) {
      --remaining[t];
      xorAcc[t] ^= d;
      if (remaining[t] == 1) ready.push_back(t);
    }
  }
  std::sort(result.recovered.begin(), result.recovered.end());
  result.success = result.recovered.size() == k;
  return result;
}

namespace {

/// Symmetric difference of the source sets behind each pre-code id in `set`.
std::vector<uint32_t> composeSet(const std::vector<uint32_t>& set, const PrecodeMap& map) {
  std::unordered_set<uint32_t> acc;
  for (uint32_t pid : set) {
    const auto it = map.find(pid);
    if (it == map.end())
      throw std::runtime_error("peelTwoStage: precode id " + std::to_string(pid) +
                               " missing from the precode map");
    for (uint32_t src : it->second) {
      if (!acc.insert(src).second) acc.erase(src);  // x XOR x cancels
    }
  }
  std::vector<uint32_t> out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TwoStageResult peelTwoStage(const std::vector<std::vector<uint32_t>>& storedSets,
                            const PrecodeMap& map, uint32_t k, uint32_t m) {
  TwoStageResult result;

  // Stage 1: peel over pre-code ids.
  const PeelResult stage1 = peel(storedSets, m);

  // Substitution stage: every queried value is an XOR of pre-code packets,
  // each of which is an XOR of sources, so expanding through the map turns
  // the query into source-level equations; peeling those is the fixed point
  // of alternating the two stages.
  std::vector<std::vector<uint32_t>> composed;
  composed.reserve(storedSets.size());
  for (const auto& set : storedSets) composed.push_back(composeSet(set, map));
  const PeelResult stage2 = peel(composed, k);

  result.recoveredSources = stage2.recovered;
  result.success = stage2.success;

  std::unordered_set<uint32_t> sources(stage2.recovered.begin(), stage2.recovered.end());
  std::unordered_set<uint32_t> precode(stage1.recovered.begin(), stage1.recovered.end());
  for (const auto& [pid, srcs] : map) {
    if (precode.count(pid)) continue;
    const bool allKnown =
        std::all_of(srcs.begin(), srcs.end(), [&](uint32_t s) { return sources.count(s) > 0; });
    if (allKnown) precode.insert(pid);
  }
  result.recoveredPrecode.assign(precode.begin(), precode.end());
  std::sort(result.recoveredPrecode.begin(), result.recoveredPrecode.end());
  return result;
}

}  // namespace fcds
