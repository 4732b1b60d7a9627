#include "csm/graph_pair.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "format.hpp"

namespace csm {

NodeIndex NodeLabels::intern(std::string_view label) {
  auto [it, inserted] = index_.try_emplace(std::string(label), static_cast<NodeIndex>(labels_.size()));
  if (inserted) labels_.emplace_back(label);
  return it->second;
}

std::optional<NodeIndex> NodeLabels::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex NodeLabels::at(std::string_view label) const {
  if (auto index = find(label)) return *index;
  throw InputError("unknown node label '" + std::string(label) + "'");
}

namespace {

using Adjacency = std::vector<std::vector<Neighbor>>;

Adjacency build_adjacency(std::size_t n, std::span<const Edge> edges, const NodeLabels& labels,
                          const char* graph_name) {
  Adjacency adj(n);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) throw InputError(std::string(graph_name) + ": node index out of range");
    if (e.u == e.v) {
      throw InputError(std::string(graph_name) + ": self-loop on '" + labels.label(e.u) + "'");
    }
    if (!std::isfinite(e.weight) || e.weight <= 0.0) {
      throw InputError(std::string(graph_name) + ": edge (" + labels.label(e.u) + ", " +
                       labels.label(e.v) + ") has non-positive weight " + format_double(e.weight));
    }
    adj[e.u].push_back({e.v, e.weight});
    adj[e.v].push_back({e.u, e.weight});
  }
  for (NodeIndex u = 0; u < n; ++u) {
    auto& list = adj[u];
    std::sort(list.begin(), list.end(),
              [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
    auto dup = std::adjacent_find(list.begin(), list.end(), [](const Neighbor& x, const Neighbor& y) {
      return x.node == y.node;
    });
    if (dup != list.end()) {
      throw InputError(std::string(graph_name) + ": duplicate edge (" + labels.label(u) + ", " +
                       labels.label(dup->node) + ")");
    }
  }
  return adj;
}

}  // namespace

GraphPair GraphPair::from_edges(NodeLabels labels, std::span<const Edge> edges_a,
                                std::span<const Edge> edges_b) {
  GraphPair pair;
  const std::size_t n = labels.size();
  pair.adj_a_ = build_adjacency(n, edges_a, labels, "graph A");
  pair.adj_b_ = build_adjacency(n, edges_b, labels, "graph B");
  pair.labels_ = std::move(labels);
  return pair;
}

double GraphPair::weight(Side side, NodeIndex u, NodeIndex v) const {
  const auto& list = adjacency(side).at(u);
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Neighbor& x, NodeIndex key) { return x.node < key; });
  return (it != list.end() && it->node == v) ? it->weight : 0.0;
}

std::size_t GraphPair::edge_count(Side side) const {
  std::size_t total = 0;
  for (const auto& list : adjacency(side)) total += list.size();
  return total / 2;
}

std::vector<Edge> GraphPair::edges(Side side) const {
  std::vector<Edge> out;
  const auto& adj = adjacency(side);
  for (NodeIndex u = 0; u < adj.size(); ++u) {
    for (const Neighbor& nb : adj[u]) {
      if (u < nb.node) out.push_back({u, nb.node, nb.weight});
    }
  }
  return out;
}

GraphPair GraphPair::swapped() const {
  GraphPair out = *this;
  std::swap(out.adj_a_, out.adj_b_);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream ss(line);
  std::string field;
  while (ss >> field) fields.push_back(std::move(field));
  return fields;
}

bool is_skippable(const std::vector<std::string>& fields) {
  return fields.empty() || fields.front().starts_with('#');
}

std::string where(std::string_view source, std::size_t line_no) {
  return std::string(source) + ":" + std::to_string(line_no) + ": ";
}

}  // namespace

std::vector<LabeledEdge> parse_edge_list(std::istream& in, std::string_view source) {
  std::vector<LabeledEdge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (is_skippable(fields)) continue;
    if (fields.size() != 3) {
      throw InputError(where(source, line_no) + "expected 'u v w', got " +
                       std::to_string(fields.size()) + " fields");
    }
    auto weight = parse_double(fields[2]);
    if (!weight) throw InputError(where(source, line_no) + "bad weight '" + fields[2] + "'");
    if (!std::isfinite(*weight) || *weight <= 0.0) {
      throw InputError(where(source, line_no) + "weight must be positive, got " + fields[2]);
    }
    if (fields[0] == fields[1]) {
      throw InputError(where(source, line_no) + "self-loop on '" + fields[0] + "'");
    }
    edges.push_back({std::move(fields[0]), std::move(fields[1]), *weight});
  }
  if (in.bad()) throw InputError(std::string(source) + ": read error");
  return edges;
}

GraphPair pair_from_labeled(std::span<const LabeledEdge> edges_a,
                            std::span<const LabeledEdge> edges_b, std::string_view source_a,
                            std::string_view source_b) {
  NodeLabels labels;
  auto convert = [&labels](std::span<const LabeledEdge> in, std::string_view source) {
    std::vector<Edge> out;
    out.reserve(in.size());
    std::map<std::pair<NodeIndex, NodeIndex>, bool> seen;
    for (const auto& e : in) {
      NodeIndex u = labels.intern(e.u);
      NodeIndex v = labels.intern(e.v);
      if (u == v) throw InputError(std::string(source) + ": self-loop on '" + e.u + "'");
      auto key = std::minmax(u, v);
      if (!seen.emplace(std::pair{key.first, key.second}, true).second) {
        throw InputError(std::string(source) + ": duplicate edge (" + e.u + ", " + e.v + ")");
      }
      out.push_back({u, v, e.weight});
    }
    return out;
  };
  auto a = convert(edges_a, source_a);
  auto b = convert(edges_b, source_b);
  return GraphPair::from_edges(std::move(labels), a, b);
}

GraphPair load_pair(const std::filesystem::path& path_a, const std::filesystem::path& path_b) {
  auto read = [](const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    return parse_edge_list(in, path.string());
  };
  auto a = read(path_a);
  auto b = read(path_b);
  return pair_from_labeled(a, b, path_a.string(), path_b.string());
}

void write_edge_list(std::ostream& out, const GraphPair& pair, Side side) {
  const auto& labels = pair.labels();
  for (const Edge& e : pair.edges(side)) {
    out << labels.label(e.u) << '\t' << labels.label(e.v) << '\t' << format_double(e.weight) << '\n';
  }
}

std::optional<std::string> scale_mismatch_warning(const GraphPair& pair) {
  auto mean = [&pair](Side side) {
    double sum = 0.0;
    auto edges = pair.edges(side);
    for (const auto& e : edges) sum += e.weight;
    return edges.empty() ? 0.0 : sum / static_cast<double>(edges.size());
  };
  const double a = mean(Side::A);
  const double b = mean(Side::B);
  if (a <= 0.0 || b <= 0.0) return std::nullopt;
  if (std::max(a, b) > 10.0 * std::min(a, b)) {
    return "mean nonzero weights differ by more than 10x (A: " + format_double(a) +
           ", B: " + format_double(b) + "); consider rescaling the inputs";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

WeightTransform parse_transform(std::string_view name) {
  if (name == "identity") return WeightTransform::Identity;
  if (name == "log1") return WeightTransform::Log1Natural;
  throw InputError("unknown weight transform '" + std::string(name) + "' (expected identity|log1)");
}

double apply_transform(WeightTransform transform, double x) {
  if (x <= 0.0) return 0.0;
  switch (transform) {
    case WeightTransform::Identity:
      return x;
    case WeightTransform::Log1Natural:
      return std::log(x) + 1.0;
  }
  return x;
}

std::vector<EdgeEvent> parse_events(std::istream& in, std::string_view source) {
  std::vector<EdgeEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (is_skippable(fields)) continue;
    if (fields.size() != 3 && fields.size() != 4) {
      throw InputError(where(source, line_no) + "expected 'u v timestamp [magnitude]'");
    }
    EdgeEvent ev;
    ev.u = fields[0];
    ev.v = fields[1];
    if (ev.u == ev.v) throw InputError(where(source, line_no) + "self-loop on '" + ev.u + "'");
    const auto& ts = fields[2];
    auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), ev.timestamp);
    if (ec != std::errc{} || ptr != ts.data() + ts.size()) {
      throw InputError(where(source, line_no) + "bad timestamp '" + ts + "'");
    }
    if (fields.size() == 4) {
      auto mag = parse_double(fields[3]);
      if (!mag || !std::isfinite(*mag) || *mag <= 0.0) {
        throw InputError(where(source, line_no) + "magnitude must be positive, got " + fields[3]);
      }
      ev.magnitude = *mag;
    }
    events.push_back(std::move(ev));
  }
  return events;
}

GraphPair build_from_events(std::span<const EdgeEvent> events, std::int64_t split,
                            WeightTransform transform) {
  NodeLabels labels;
  // Ordered map keeps edge insertion deterministic.
  std::map<std::pair<NodeIndex, NodeIndex>, std::pair<double, double>> totals;
  for (const auto& ev : events) {
    if (ev.u == ev.v) throw InputError("event self-loop on '" + ev.u + "'");
    if (!(ev.magnitude > 0.0)) throw InputError("event magnitude must be positive");
    NodeIndex u = labels.intern(ev.u);
    NodeIndex v = labels.intern(ev.v);
    auto& slot = totals[std::minmax(u, v)];
    (ev.timestamp < split ? slot.first : slot.second) += ev.magnitude;
  }
  std::vector<Edge> a;
  std::vector<Edge> b;
  for (const auto& [key, x] : totals) {
    if (double w = apply_transform(transform, x.first); w > 0.0) a.push_back({key.first, key.second, w});
    if (double w = apply_transform(transform, x.second); w > 0.0) b.push_back({key.first, key.second, w});
  }
  return GraphPair::from_edges(std::move(labels), a, b);
}

// ---------------------------------------------------------------------------

MatrixPair export_matrix(const GraphPair& pair, std::span<const std::string> nodes) {
  std::vector<NodeIndex> index;
  index.reserve(nodes.size());
  for (const auto& label : nodes) index.push_back(pair.labels().at(label));

  const auto n = static_cast<Eigen::Index>(nodes.size());
  MatrixPair out{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      out.a(i, j) = pair.weight(Side::A, index[i], index[j]);
      out.b(i, j) = pair.weight(Side::B, index[i], index[j]);
    }
  }
  return out;
}

void write_matrix_csv(std::ostream& out, const MatrixPair& matrices,
                      std::span<const std::string> nodes) {
  out << "graph,node";
  for (const auto& label : nodes) out << ',' << label;
  out << '\n';
  auto rows = [&](const char* name, const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out << name << ',' << nodes[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < m.cols(); ++j) out << ',' << format_double(m(i, j));
      out << '\n';
    }
  };
  rows("A", matrices.a);
  rows("B", matrices.b);
}

}  // namespace csm
