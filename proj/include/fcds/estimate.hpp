#pragma once

#include <cstdint>
#include <unordered_map>

namespace fcds {

struct SourceVisitStats {
  uint64_t firstRound = 0;
  uint64_t lastRound = 0;
  uint32_t count = 0;
};

/** One node's online record of packet visits and the estimates of the network
 *  size and source count derived from it.
 *
 *  Monitoring stops (done) exactly when the first source packet ever seen has
 *  visited the node `c2` times; at that point the estimates are computed:
 *    - per-source mean inter-visit time (last - first)/(visits - 1),
 *      averaged over sources seen at least twice, gives nHat;
 *    - the observation window divided by the total visit count gives the
 *      mean inter-packet time, and kHat = round(nHat / that), at least 1.
 *  Sources seen exactly once carry no interval and are excluded from the
 *  inter-visit average (their visits still count toward the window total).
 */
class InferenceState {
public:
  explicit InferenceState(uint32_t c2) : c2_(c2) {}

  /// Ignored once done.
  void recordVisit(uint32_t sourceId, uint64_t round);

  /// Completes with whatever was recorded (used when the packets retire
  /// before the regular stopping rule fires). Degenerate records fall back
  /// to kHat = max(1, kSeen) and a floor of 2 on nHat.
  void forceFinalize();

  bool done() const { return done_; }
  bool forced() const { return forced_; }
  uint32_t firstPacketId() const { return firstPacketId_; }
  uint32_t kSeen() const { return static_cast<uint32_t>(visits_.size()); }
  double nHat() const { return nHat_; }
  uint32_t kHat() const { return kHat_; }
  const std::unordered_map<uint32_t, SourceVisitStats>& visits() const { return visits_; }

private:
  void finalize();

  uint32_t c2_;
  bool done_ = false;
  bool forced_ = false;
  bool hasFirst_ = false;
  uint32_t firstPacketId_ = 0;
  std::unordered_map<uint32_t, SourceVisitStats> visits_;
  double nHat_ = 0.0;
  uint32_t kHat_ = 0;
};

}  // namespace fcds
