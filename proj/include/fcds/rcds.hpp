#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fcds/decode.hpp"
#include "fcds/graph.hpp"
#include "fcds/ltcds.hpp"
#include "fcds/walk.hpp"

namespace fcds {

/// Distribution of the per-source copy count b. The default (b uniform on
/// {1,2,3}) is a placeholder pre-code; real deployments plug in their own.
struct CopyCountDistribution {
  std::vector<uint32_t> values{1, 2, 3};
  std::vector<double> probs{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

  double meanCopies() const;
  uint32_t sample(Rng& rng) const;
  void validate() const;
};

struct PrecodeConfig {
  uint32_t m = 0;  // 0 = ceil(1.1 * k)
  CopyCountDistribution copies;
  double c3 = 3.0;          // mixing constant: copies absorb only after c3*n*ln(n) hops
  double dropFactor = 10.0;  // copies retire unabsorbed at dropFactor*c3*n*ln(n) hops
  uint64_t roundLimit = 0;   // 0 = automatic safety limit
};

struct PrecodeOutput {
  uint32_t node = 0;
  bool systematic = false;  // source nodes are always outputs
  uint32_t absorbTarget = 0;  // a(w)
  std::vector<uint32_t> accepted;  // sorted source ids whose copy was absorbed
  std::vector<uint64_t> acceptHops;  // hop count of each absorbed copy, aligned with accepted
  std::vector<uint32_t> yIds;      // accepted, plus own id for systematic nodes
};

struct PrecodeResult {
  std::vector<PrecodeOutput> outputs;  // ascending node id
  uint64_t copiesLaunched = 0;
  uint64_t copiesAbsorbed = 0;
  uint64_t copiesDropped = 0;
  uint32_t underfilledOutputs = 0;  // |accepted| < a(w)
  SimClock clock;
  size_t maxQueueLen = 0;
};

/** Distributed pre-code: every source launches b(s) copies on random walks;
 *  non-sources self-select as parity outputs with probability (m-k)/(n-k);
 *  each output absorbs up to a(w) ~ Binomial(k, E[b]/m) distinct sources'
 *  copies once the copies have mixed for c3*n*ln(n) hops. Copies that find no
 *  willing output by the drop horizon retire unabsorbed.
 */
PrecodeResult runPrecoding(const Network& net, std::span<const uint32_t> sources,
                           const PrecodeConfig& cfg, uint64_t seed);

struct RcdsConfig {
  PrecodeConfig precode;
  LtcdsConfig inner;  // knownGlobals, when set, is overwritten with (n, #outputs)
  bool innerEstimated = false;
};

struct RcdsResult {
  PrecodeResult precode;
  std::vector<uint32_t> outputNodes;  // sorted; the inner run's sources
  PrecodeMap map;                     // output node id -> constituent source ids
  LtcdsResult inner;
};

/// Pre-code, then LTCDS with the pre-coding output nodes as sources. The
/// inner phase consumes deriveSeed(seed, SeedTag::InnerCode) so it can be
/// reproduced by a direct runLtcds call.
RcdsResult runRcds(const Network& net, std::span<const uint32_t> sources, const RcdsConfig& cfg,
                   uint64_t seed);

}  // namespace fcds
