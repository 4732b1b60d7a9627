#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "csm/graph_pair.hpp"
#include "csm/types.hpp"

namespace csm {

using HopCount = std::uint32_t;

/// Distance of nodes no path reaches. Strictly larger than any node count.
inline constexpr HopCount kUnreachable = std::numeric_limits<HopCount>::max();

/// Multi-source hop distances in each graph, counting only nonzero edges.
struct HopDistances {
  std::vector<HopCount> a;
  std::vector<HopCount> b;
};

/// Throws InputError if `sources` is empty or mentions an unknown index.
HopDistances distances(const GraphPair& pair, const NodeSet& sources);

/// Every node within `radius` hops of `sources` in A or in B. Always
/// contains `sources`. Throws InputError if `sources` is empty.
NodeSet neighbors(const GraphPair& pair, const NodeSet& sources, HopCount radius);

}  // namespace csm
