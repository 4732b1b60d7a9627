#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "csm/types.hpp"

namespace csm {

struct CutResult {
  double flow = 0.0;
  /// Nodes reachable from the source in the final residual graph, source
  /// itself excluded. Never contains the sink.
  NodeSet source_side;
};

/// Capacitated network solved with Dinic's algorithm (level graph plus
/// blocking flow).
///
/// Every arc is stored with a paired reverse arc. Directed arcs get a reverse
/// of capacity 0; undirected capacities are one pair carrying c both ways.
/// Infinite arcs get a finite sentinel capacity of 1 + (sum of all finite
/// capacities), fixed when the network is solved, so they never lie on a
/// minimum cut. Arcs whose residual falls below 1e-12 times the largest
/// finite capacity are treated as saturated.
///
/// Build, then call max_flow() once; further mutation throws StateError.
class FlowNetwork {
 public:
  FlowNetwork(std::size_t node_count, NodeIndex source, NodeIndex sink);

  std::size_t node_count() const { return head_.size(); }
  NodeIndex source() const { return source_; }
  NodeIndex sink() const { return sink_; }

  void add_arc(NodeIndex from, NodeIndex to, double capacity);
  void add_infinite_arc(NodeIndex from, NodeIndex to);
  void add_undirected_capacity(NodeIndex u, NodeIndex v, double capacity);

  /// Solves on first call; later calls return the same result.
  const CutResult& max_flow();

  bool solved() const { return result_.has_value(); }

  /// Total original capacity of arcs leaving (source_side + source). Equals
  /// the flow value for a solved network, by max-flow/min-cut duality.
  double verify_cut(const CutResult& result) const;

  /// Outflow minus inflow at `node` under the current flow.
  double net_outflow(NodeIndex node) const;

  /// Capacity used for infinite arcs (valid after solving).
  double infinite_capacity() const { return infinity_; }

 private:
  struct Arc {
    NodeIndex to;
    double capacity;
    double residual;
    bool infinite;
  };

  void check_mutable(NodeIndex u, NodeIndex v) const;
  void push_pair(NodeIndex u, NodeIndex v, double forward, double backward, bool infinite);
  void finalize();
  bool build_levels();
  double augment(NodeIndex u, double limit);

  NodeIndex source_;
  NodeIndex sink_;
  std::vector<Arc> arcs_;                    // arc i and i^1 are a pair
  std::vector<std::vector<std::uint32_t>> head_;  // outgoing arc ids per node
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  double finite_total_ = 0.0;
  double largest_finite_ = 0.0;
  double infinity_ = 0.0;
  double tolerance_ = 0.0;
  std::optional<CutResult> result_;
};

}  // namespace csm
