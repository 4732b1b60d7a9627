#include "csm/neighborhood.hpp"

#include <deque>

namespace csm {

namespace {

void check_sources(const GraphPair& pair, const NodeSet& sources) {
  if (sources.empty()) throw InputError("neighborhood needs a non-empty source set");
  for (NodeIndex s : sources) {
    if (s >= pair.node_count()) throw InputError("source node index out of range");
  }
}

// Breadth-first search from all sources at once, stopping at `limit` hops.
std::vector<HopCount> bfs(const GraphPair& pair, Side side, const NodeSet& sources, HopCount limit) {
  std::vector<HopCount> dist(pair.node_count(), kUnreachable);
  std::deque<NodeIndex> queue;
  for (NodeIndex s : sources) {
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    NodeIndex u = queue.front();
    queue.pop_front();
    if (dist[u] >= limit) continue;
    for (const Neighbor& nb : pair.neighbors(side, u)) {
      if (dist[nb.node] == kUnreachable) {
        dist[nb.node] = dist[u] + 1;
        queue.push_back(nb.node);
      }
    }
  }
  return dist;
}

}  // namespace

HopDistances distances(const GraphPair& pair, const NodeSet& sources) {
  check_sources(pair, sources);
  return {bfs(pair, Side::A, sources, kUnreachable), bfs(pair, Side::B, sources, kUnreachable)};
}

NodeSet neighbors(const GraphPair& pair, const NodeSet& sources, HopCount radius) {
  check_sources(pair, sources);
  auto da = bfs(pair, Side::A, sources, radius);
  auto db = bfs(pair, Side::B, sources, radius);
  NodeSet ball;
  for (NodeIndex u = 0; u < pair.node_count(); ++u) {
    if (da[u] <= radius || db[u] <= radius) ball.push_back(u);
  }
  return ball;
}

}  // namespace csm
