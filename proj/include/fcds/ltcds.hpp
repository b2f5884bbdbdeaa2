#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "fcds/estimate.hpp"
#include "fcds/graph.hpp"
#include "fcds/rng.hpp"
#include "fcds/soliton.hpp"
#include "fcds/walk.hpp"

namespace fcds {

enum class OmegaFamily { IdealSoliton, RobustSoliton };

struct OmegaConfig {
  OmegaFamily family = OmegaFamily::IdealSoliton;
  double c0 = 0.1;
  double delta = 0.5;
};

/// Distribution over {1..k} for the given family. Robust Soliton parameters
/// that are invalid at this k (pivot outside [1, k], or k < 2) fall back to
/// the Ideal Soliton so estimated nodes with tiny kHat stay functional.
DegreeDistribution makeOmega(const OmegaConfig& cfg, uint32_t k);

/// Cache of distributions keyed by support size; estimated runs build one per
/// distinct kHat instead of one per node.
class OmegaCache {
public:
  explicit OmegaCache(const OmegaConfig& cfg) : cfg_(cfg) {}
  const DegreeDistribution& get(uint32_t k);

private:
  OmegaConfig cfg_;
  std::map<uint32_t, DegreeDistribution> built_;
};

/** A node's encoding-phase state. The stored XOR is represented by the set of
 *  constituent source ids (`accepted`); the optional payload accumulator
 *  exists to check that this representation matches real bitwise XOR.
 */
struct StorageState {
  uint32_t codeDegree = 0;   // d_c(u)
  double acceptProb = 0.0;   // min(1, d_c/kHat)
  uint64_t hopCap = 0;       // ceil(c1 * nHat * ln nHat)
  std::unordered_set<uint32_t> decided;   // sources already coin-flipped
  std::unordered_set<uint32_t> accepted;  // sources XORed into storage
  uint64_t payloadXor = 0;
};

/// Draws d_c over {1..kHat} and fixes this node's acceptance probability and
/// retirement threshold.
StorageState beginEncoding(Rng& rng, double nHat, uint32_t kHat, double c1, OmegaCache& omegas);

/** Encoding-phase arrival decision. Retires the packet (returns false) when
 *  its hop counter has reached this node's cap; otherwise flips the
 *  acceptance coin -- once per distinct source, ever -- and keeps the packet
 *  walking. `payloads` may be empty; when given, accepted payloads are XORed
 *  into the accumulator.
 */
bool onPacket(StorageState& st, const Packet& pkt, Rng& rng,
              std::span<const uint64_t> payloads = {});

struct LtcdsConfig {
  double c1 = 3.0;
  uint32_t c2 = 50;
  OmegaConfig omega;
  /// When set, nodes skip inference and use these true (n, k) values.
  std::optional<std::pair<uint32_t, uint32_t>> knownGlobals;
  bool payloadMode = false;
  uint64_t roundLimit = 0;  // 0 = generous automatic safety limit
};

struct LtcdsNodeResult {
  StorageState storage;
  double nHat = 0.0;
  uint32_t kHat = 0;
  uint32_t kSeen = 0;
  bool inferenceForced = false;
};

struct LtcdsResult {
  std::vector<LtcdsNodeResult> nodes;  // indexed by node id
  SimClock clock;
  size_t maxQueueLen = 0;
  uint32_t forcedInferenceCount = 0;
  std::vector<uint64_t> payloads;  // per source node id (empty unless payloadMode)
};

/** Full LTCDS run: initialization (each source hands its packet to a random
 *  neighbor), per-node inference (skipped under knownGlobals), and encoding
 *  until every packet has retired at some node's hop cap. Nodes still in
 *  inference at that point adopt estimates from whatever they recorded and
 *  are counted in forcedInferenceCount.
 */
LtcdsResult runLtcds(const Network& net, std::span<const uint32_t> sources,
                     const LtcdsConfig& cfg, uint64_t seed, TraceFn trace = {});

}  // namespace fcds
