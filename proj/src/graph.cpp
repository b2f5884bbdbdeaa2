#include "fcds/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "fcds/csv_io.hpp"
#include "fcds/rng.hpp"

namespace fcds {

Network networkFromPositions(std::vector<Vec2> positions, double side) {
  Network net;
  net.n = static_cast<uint32_t>(positions.size());
  net.side = side;
  net.positions = std::move(positions);
  net.adjacency.assign(net.n, {});

  // Bucket nodes into unit cells; only the 3x3 neighborhood of a cell can
  // contain nodes within radius 1.
  const int cells = std::max(1, static_cast<int>(std::floor(side)) + 1);
  std::vector<std::vector<uint32_t>> grid(static_cast<size_t>(cells) * cells);
  auto cellOf = [&](const Vec2& p) {
    int cx = std::min(cells - 1, std::max(0, static_cast<int>(p.x)));
    int cy = std::min(cells - 1, std::max(0, static_cast<int>(p.y)));
    return std::pair<int, int>{cx, cy};
  };
  for (uint32_t u = 0; u < net.n; ++u) {
    auto [cx, cy] = cellOf(net.positions[u]);
    grid[static_cast<size_t>(cy) * cells + cx].push_back(u);
  }

  uint64_t edges = 0;
  for (uint32_t u = 0; u < net.n; ++u) {
    auto [cx, cy] = cellOf(net.positions[u]);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = cx + dx, ny = cy + dy;
        if (nx < 0 || ny < 0 || nx >= cells || ny >= cells) continue;
        for (uint32_t v : grid[static_cast<size_t>(ny) * cells + nx]) {
          if (v <= u) continue;
          const double ddx = net.positions[u].x - net.positions[v].x;
          const double ddy = net.positions[u].y - net.positions[v].y;
          if (ddx * ddx + ddy * ddy <= 1.0) {
            net.adjacency[u].push_back(v);
            net.adjacency[v].push_back(u);
            ++edges;
          }
        }
      }
    }
  }
  for (auto& nbrs : net.adjacency) std::sort(nbrs.begin(), nbrs.end());
  net.meanDegree = net.n > 0 ? 2.0 * static_cast<double>(edges) / net.n : 0.0;
  return net;
}

bool isConnected(const Network& net) {
  if (net.n == 0) return false;
  std::vector<uint8_t> seen(net.n, 0);
  std::vector<uint32_t> stack{0};
  seen[0] = 1;
  uint32_t reached = 1;
  while (!stack.empty()) {
    const uint32_t u = stack.back();
    stack.pop_back();
    for (uint32_t v : net.adjacency[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == net.n;
}

Network generateNetwork(uint32_t n, double density, uint64_t seed, int maxAttempts) {
  if (n < 2) throw std::invalid_argument("generateNetwork: n must be >= 2");
  if (density <= 0.0) throw std::invalid_argument("generateNetwork: density must be > 0");

  const double pi = 3.14159265358979323846;
  if (density * pi < 4.0 * pi) {
    std::fprintf(stderr,
                 "fcds: warning: expected degree %.3f is below 4*pi; connectivity retries likely\n",
                 density * pi);
  }

  const double side = std::sqrt(static_cast<double>(n) / density);
  for (int attempt = 0; attempt < maxAttempts; ++attempt) {
    Rng rng(deriveSeed(seed, SeedTag::Graph, static_cast<uint64_t>(attempt) + 1));
    std::vector<Vec2> pts(n);
    for (auto& p : pts) {
      p.x = rng.nextDouble() * side;
      p.y = rng.nextDouble() * side;
    }
    Network net = networkFromPositions(std::move(pts), side);
    if (isConnected(net)) return net;
  }
  throw std::runtime_error("could not generate connected graph (n=" + std::to_string(n) +
                           ", lambda=" + std::to_string(density) + ") after " +
                           std::to_string(maxAttempts) + " attempts");
}

void writeEdgeList(const Network& net, std::ostream& os) {
  for (uint32_t u = 0; u < net.n; ++u)
    for (uint32_t v : net.adjacency[u])
      if (v > u) os << u << ' ' << v << '\n';
}

void writePositionsCsv(const Network& net, std::ostream& os) {
  os << "id,x,y\n";
  for (uint32_t u = 0; u < net.n; ++u)
    os << u << ',' << formatDouble(net.positions[u].x) << ',' << formatDouble(net.positions[u].y)
       << '\n';
}

}  // namespace fcds
