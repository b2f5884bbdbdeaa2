#include "fcds/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fcds {

void InferenceState::recordVisit(uint32_t sourceId, uint64_t round) {
  if (done_) return;
  if (!hasFirst_) {
    hasFirst_ = true;
    firstPacketId_ = sourceId;
  }
  auto& st = visits_[sourceId];
  if (st.count == 0) st.firstRound = round;
  st.lastRound = round;
  ++st.count;
  if (sourceId == firstPacketId_ && st.count >= c2_) {
    done_ = true;
    finalize();
  }
}

void InferenceState::forceFinalize() {
  if (done_) return;
  done_ = true;
  forced_ = true;
  finalize();
}

void InferenceState::finalize() {
  if (visits_.empty()) {  // saw nothing at all
    nHat_ = 2.0;
    kHat_ = 1;
    return;
  }

  uint64_t windowFirst = UINT64_MAX, windowLast = 0, totalVisits = 0;
  double intervalSum = 0.0;
  uint32_t intervalSources = 0;
  for (const auto& [src, st] : visits_) {
    windowFirst = std::min(windowFirst, st.firstRound);
    windowLast = std::max(windowLast, st.lastRound);
    totalVisits += st.count;
    if (st.count >= 2) {
      intervalSum += static_cast<double>(st.lastRound - st.firstRound) /
                     static_cast<double>(st.count - 1);
      ++intervalSources;
    }
  }
  const double window = static_cast<double>(windowLast - windowFirst);
  const double packetInterval = window / static_cast<double>(totalVisits);

  if (intervalSources > 0) {
    nHat_ = intervalSum / static_cast<double>(intervalSources);
    const auto k = packetInterval > 0.0 ? std::llround(nHat_ / packetInterval)
                                        : static_cast<long long>(kSeen());
    kHat_ = static_cast<uint32_t>(std::max<long long>(1, k));
  } else {
    // Only single visits: no inter-visit interval exists. Take the distinct
    // sources seen as kHat and invert the usual ratio for nHat.
    kHat_ = std::max<uint32_t>(1, kSeen());
    nHat_ = packetInterval > 0.0 ? packetInterval * static_cast<double>(kHat_) : 2.0;
  }
  nHat_ = std::max(nHat_, 2.0);
}

}  // namespace fcds
