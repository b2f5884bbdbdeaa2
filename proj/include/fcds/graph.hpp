#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace fcds {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/** Random geometric graph over [0, side]^2 with communication radius 1.
 *  Immutable after construction; safe to share read-only across trials.
 */
struct Network {
  uint32_t n = 0;
  double side = 0.0;  // side^2 == n / density when generated
  std::vector<Vec2> positions;
  std::vector<std::vector<uint32_t>> adjacency;  // sorted neighbor ids
  double meanDegree = 0.0;

  uint32_t degree(uint32_t u) const { return static_cast<uint32_t>(adjacency[u].size()); }
};

/// Builds adjacency with the distance-at-most-1 rule (ties count as edges).
/// Also the test hook for injected positions.
Network networkFromPositions(std::vector<Vec2> positions, double side);

/** Draws n points uniformly on a square of side sqrt(n/density) and retries
 *  with derived seeds until the radius-1 graph is connected (at most
 *  `maxAttempts` regenerations). Deterministic given the seed.
 */
Network generateNetwork(uint32_t n, double density, uint64_t seed, int maxAttempts = 100);

bool isConnected(const Network& net);

/// Edge list, one "u v" line per edge with u < v, 0-indexed.
void writeEdgeList(const Network& net, std::ostream& os);
/// Positions as "id,x,y" rows with a header.
void writePositionsCsv(const Network& net, std::ostream& os);

}  // namespace fcds
