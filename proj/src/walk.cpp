#include "fcds/walk.hpp"

#include <stdexcept>

namespace fcds {

std::vector<std::vector<uint32_t>> measureReturnTimes(const Network& net, uint32_t start,
                                                      uint64_t rounds, Rng& rng) {
  if (start >= net.n) throw std::invalid_argument("measureReturnTimes: bad start node");
  std::vector<int64_t> lastVisit(net.n, -1);
  std::vector<std::vector<uint32_t>> intervals(net.n);
  uint32_t cur = start;
  lastVisit[cur] = 0;
  for (uint64_t r = 1; r <= rounds; ++r) {
    const auto& nbrs = net.adjacency[cur];
    cur = nbrs[rng.nextBelow(nbrs.size())];
    if (lastVisit[cur] >= 0)
      intervals[cur].push_back(static_cast<uint32_t>(static_cast<int64_t>(r) - lastVisit[cur]));
    lastVisit[cur] = static_cast<int64_t>(r);
  }
  return intervals;
}

std::vector<std::vector<uint32_t>> measureInterPacketTimes(const Network& net, uint32_t k,
                                                           uint64_t rounds, Rng& rng) {
  if (k == 0) throw std::invalid_argument("measureInterPacketTimes: k must be >= 1");
  std::vector<uint32_t> pos(k);
  std::vector<int64_t> lastVisit(net.n, -1);
  std::vector<std::vector<uint32_t>> intervals(net.n);
  auto visit = [&](uint32_t u, uint64_t r) {
    if (lastVisit[u] >= 0)
      intervals[u].push_back(static_cast<uint32_t>(static_cast<int64_t>(r) - lastVisit[u]));
    lastVisit[u] = static_cast<int64_t>(r);
  };
  for (auto& p : pos) {
    p = static_cast<uint32_t>(rng.nextBelow(net.n));
    visit(p, 0);
  }
  for (uint64_t r = 1; r <= rounds; ++r) {
    for (auto& p : pos) {
      const auto& nbrs = net.adjacency[p];
      p = nbrs[rng.nextBelow(nbrs.size())];
      visit(p, r);
    }
  }
  return intervals;
}

double measureCoverTime(const Network& net, uint32_t trials, Rng& rng) {
  if (trials == 0) throw std::invalid_argument("measureCoverTime: trials must be >= 1");
  std::vector<uint32_t> stamp(net.n, 0);
  double total = 0.0;
  for (uint32_t t = 1; t <= trials; ++t) {
    uint32_t cur = static_cast<uint32_t>(rng.nextBelow(net.n));
    stamp[cur] = t;
    uint32_t covered = 1;
    uint64_t steps = 0;
    while (covered < net.n) {
      const auto& nbrs = net.adjacency[cur];
      cur = nbrs[rng.nextBelow(nbrs.size())];
      ++steps;
      if (stamp[cur] != t) {
        stamp[cur] = t;
        ++covered;
      }
    }
    total += static_cast<double>(steps);
  }
  return total / static_cast<double>(trials);
}

}  // namespace fcds
