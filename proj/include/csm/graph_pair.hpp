#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "csm/types.hpp"

namespace csm {

/// Bijection between external string labels and dense internal indices.
class NodeLabels {
 public:
  NodeLabels() = default;

  /// Returns the index of `label`, inserting it if new.
  NodeIndex intern(std::string_view label);

  std::optional<NodeIndex> find(std::string_view label) const;

  /// Like find(), but throws InputError for unknown labels.
  NodeIndex at(std::string_view label) const;

  const std::string& label(NodeIndex index) const { return labels_.at(index); }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& all() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeIndex> index_;
};

struct Neighbor {
  NodeIndex node;
  double weight;
};

/// An undirected edge given by endpoint labels.
struct LabeledEdge {
  std::string u;
  std::string v;
  double weight;
};

/// Undirected edge on internal indices.
struct Edge {
  NodeIndex u;
  NodeIndex v;
  double weight;
};

enum class Side { A, B };

/// Two weighted undirected graphs over one node universe.
///
/// Immutable after construction. Adjacency lists are symmetric, sorted by
/// neighbor index, free of self-loops and duplicates, and only hold strictly
/// positive weights (absence means weight 0).
class GraphPair {
 public:
  GraphPair() = default;

  /// Validates and builds a pair. Throws InputError on self-loops, duplicate
  /// pairs within one graph, non-positive or non-finite weights, or indices
  /// outside the universe.
  static GraphPair from_edges(NodeLabels labels, std::span<const Edge> edges_a,
                              std::span<const Edge> edges_b);

  std::size_t node_count() const { return labels_.size(); }
  const NodeLabels& labels() const { return labels_; }

  std::span<const Neighbor> neighbors(Side side, NodeIndex u) const {
    return adjacency(side).at(u);
  }

  /// Weight of (u, v) in the given graph, 0 when absent.
  double weight(Side side, NodeIndex u, NodeIndex v) const;

  /// Number of undirected edges stored in the given graph.
  std::size_t edge_count(Side side) const;

  /// Each undirected edge once, with u < v, ordered by (u, v).
  std::vector<Edge> edges(Side side) const;

  /// Same universe with A and B exchanged.
  GraphPair swapped() const;

 private:
  using Adjacency = std::vector<std::vector<Neighbor>>;
  const Adjacency& adjacency(Side side) const { return side == Side::A ? adj_a_ : adj_b_; }

  NodeLabels labels_;
  Adjacency adj_a_;
  Adjacency adj_b_;
};

/// Parses an edge-list stream: one `u v w` triple per line, `#` comments and
/// blank lines skipped. `source` names the input in diagnostics.
std::vector<LabeledEdge> parse_edge_list(std::istream& in, std::string_view source);

/// Loads two edge-list files into a pair over the union of their labels.
/// Labels are indexed in order of first appearance, file A first.
GraphPair load_pair(const std::filesystem::path& path_a, const std::filesystem::path& path_b);

/// Builds a pair from in-memory labeled edge lists (same rules as load_pair).
GraphPair pair_from_labeled(std::span<const LabeledEdge> edges_a,
                            std::span<const LabeledEdge> edges_b,
                            std::string_view source_a = "graph A",
                            std::string_view source_b = "graph B");

/// Writes one graph of the pair as an edge list that load_pair reads back
/// into an identical pair. Weights use shortest round-trip formatting.
void write_edge_list(std::ostream& out, const GraphPair& pair, Side side);

/// Non-empty when the mean nonzero weights of A and B differ by more than 10x.
std::optional<std::string> scale_mismatch_warning(const GraphPair& pair);

// ---------------------------------------------------------------------------
// Temporal ingestion

struct EdgeEvent {
  std::string u;
  std::string v;
  std::int64_t timestamp = 0;
  double magnitude = 1.0;
};

enum class WeightTransform {
  Identity,
  /// ln(x) + 1 for x > 0, 0 for x = 0.
  Log1Natural,
};

WeightTransform parse_transform(std::string_view name);
double apply_transform(WeightTransform transform, double x);

/// Parses `u v timestamp [magnitude]` lines.
std::vector<EdgeEvent> parse_events(std::istream& in, std::string_view source);

/// Aggregates events per unordered pair: magnitudes with timestamp < split
/// go to A, the rest to B, then each total is transformed.
GraphPair build_from_events(std::span<const EdgeEvent> events, std::int64_t split,
                            WeightTransform transform);

// ---------------------------------------------------------------------------
// Dense export

struct MatrixPair {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
};

/// Dense symmetric weight matrices over `nodes`, rows/columns in list order.
MatrixPair export_matrix(const GraphPair& pair, std::span<const std::string> nodes);

/// Writes `matrices` as one CSV table: header `graph,node,<labels...>`, then
/// one row per (graph, node).
void write_matrix_csv(std::ostream& out, const MatrixPair& matrices,
                      std::span<const std::string> nodes);

}  // namespace csm
