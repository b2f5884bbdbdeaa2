#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <vector>

#include "fcds/graph.hpp"
#include "fcds/rng.hpp"

namespace fcds {

/// One walking unit. The hop counter only ever grows; it counts transmissions
/// of this packet (the initial hand-off from its source is not a hop).
struct Packet {
  uint32_t sourceId = 0;
  uint32_t copyId = 0;  // distinguishes pre-code copies of one source
  uint64_t hopCount = 0;
};

struct SimClock {
  uint64_t round = 0;
  uint64_t totalTransmissions = 0;
};

/// Optional debug trace: (round, nodeId, packet, event).
using TraceFn = std::function<void(uint64_t, uint32_t, const Packet&, const char*)>;

/** Discrete-round synchronous engine. Per round, every node with a nonempty
 *  forward queue dequeues its head-of-line packet and hands it to a uniformly
 *  random neighbor; the receiver's callback decides whether the packet keeps
 *  walking (appended to the receiver's queue) or retires.
 *
 *  All sends of a round are computed against the start-of-round queue
 *  snapshot. Each node draws neighbor choices from its own stream, and
 *  deliveries are processed in sender-id order, so the outcome does not
 *  depend on the iteration order of nodes.
 */
class WalkEngine {
public:
  WalkEngine(const Network& net, uint64_t seed) : net_(&net), queues_(net.n) {
    nodeRng_.reserve(net.n);
    for (uint32_t u = 0; u < net.n; ++u) nodeRng_.emplace_back(deriveSeed(seed, SeedTag::Walk, u + 1));
  }

  /// Initial hand-off: the source sends its packet to a random neighbor.
  /// Counts as a delivery (the callback runs) but not as a hop.
  template <class OnArrival>
  void inject(uint32_t sourceNode, Packet pkt, OnArrival&& onArrival) {
    const auto& nbrs = net_->adjacency[sourceNode];
    const auto to = nbrs[nodeRng_[sourceNode].nextBelow(nbrs.size())];
    ++live_;
    if (trace_) trace_(clock_.round, to, pkt, "inject");
    deliver(to, pkt, onArrival);
  }

  template <class OnArrival>
  void stepRound(OnArrival&& onArrival, std::span<const uint32_t> order = {}) {
    ++clock_.round;
    sends_.clear();
    auto sendFrom = [&](uint32_t u) {
      auto& q = queues_[u];
      if (q.empty()) return;
      Packet p = q.front();
      q.pop_front();
      const auto& nbrs = net_->adjacency[u];
      sends_.push_back({u, nbrs[nodeRng_[u].nextBelow(nbrs.size())], p});
    };
    if (order.empty())
      for (uint32_t u = 0; u < net_->n; ++u) sendFrom(u);
    else
      for (uint32_t u : order) sendFrom(u);
    std::sort(sends_.begin(), sends_.end(),
              [](const Send& a, const Send& b) { return a.from < b.from; });
    for (auto& s : sends_) {
      ++s.pkt.hopCount;
      ++clock_.totalTransmissions;
      deliver(s.to, s.pkt, onArrival);
    }
  }

  const SimClock& clock() const { return clock_; }
  size_t liveCount() const { return live_; }
  size_t maxQueueLen() const { return maxQueueLen_; }
  const std::vector<std::deque<Packet>>& queues() const { return queues_; }
  const std::vector<Packet>& retired() const { return retired_; }

  /// Accounting check: sum of hop counters over live and retired packets.
  uint64_t hopSum() const {
    uint64_t s = 0;
    for (const auto& q : queues_)
      for (const auto& p : q) s += p.hopCount;
    for (const auto& p : retired_) s += p.hopCount;
    return s;
  }

  void setTrace(TraceFn fn) { trace_ = std::move(fn); }

private:
  struct Send {
    uint32_t from;
    uint32_t to;
    Packet pkt;
  };

  template <class OnArrival>
  void deliver(uint32_t to, const Packet& pkt, OnArrival&& onArrival) {
    if (trace_) trace_(clock_.round, to, pkt, "arrive");
    if (onArrival(to, pkt)) {
      queues_[to].push_back(pkt);
      maxQueueLen_ = std::max(maxQueueLen_, queues_[to].size());
    } else {
      if (trace_) trace_(clock_.round, to, pkt, "retire");
      retired_.push_back(pkt);
      --live_;
    }
  }

  const Network* net_;
  std::vector<std::deque<Packet>> queues_;
  std::vector<Rng> nodeRng_;
  std::vector<Packet> retired_;
  std::vector<Send> sends_;
  SimClock clock_;
  size_t live_ = 0;
  size_t maxQueueLen_ = 0;
  TraceFn trace_;
};

/** Runs one unqueued simple random walk (one hop per round) from `start` for
 *  `rounds` steps and returns, per node, the intervals between consecutive
 *  visits. The starting position counts as a visit at round 0.
 */
std::vector<std::vector<uint32_t>> measureReturnTimes(const Network& net, uint32_t start,
                                                      uint64_t rounds, Rng& rng);

/** k independent unqueued walks from uniformly random starts; returns, per
 *  node, intervals between consecutive visits by any of the walks.
 */
std::vector<std::vector<uint32_t>> measureInterPacketTimes(const Network& net, uint32_t k,
                                                           uint64_t rounds, Rng& rng);

/// Mean number of steps for a walk from a uniformly random start to visit
/// every node, averaged over `trials`.
double measureCoverTime(const Network& net, uint32_t trials, Rng& rng);

}  // namespace fcds
