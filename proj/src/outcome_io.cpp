#include "csm/outcome_io.hpp"

#include <ostream>

#include "format.hpp"

namespace csm {

namespace {

nlohmann::ordered_json labels_of(const GraphPair& pair, const NodeSet& nodes) {
  auto arr = nlohmann::ordered_json::array();
  for (NodeIndex u : nodes) arr.push_back(pair.labels().label(u));
  return arr;
}

// Core first, then the added nodes, each in index order.
std::vector<std::string> display_order(const GraphPair& pair, const MiningOutcome& outcome) {
  std::vector<std::string> order;
  if (outcome.subgraphs.empty()) return order;
  for (NodeIndex u : outcome.core) order.push_back(pair.labels().label(u));
  for (NodeIndex u : set_difference(outcome.subgraphs.front().nodes, outcome.core)) {
    order.push_back(pair.labels().label(u));
  }
  return order;
}

std::string quoted(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

nlohmann::ordered_json outcome_to_json(const GraphPair& pair, const MiningOutcome& outcome) {
  nlohmann::ordered_json doc;
  doc["version"] = kOutcomeSchemaVersion;
  doc["parameters"] = {
      {"radius", outcome.radius},
      {"radius_grow", outcome.radius_grow},
      {"no_core", !outcome.use_core},
      {"no_neighbor", !outcome.use_neighborhood},
  };
  doc["seeds"] = labels_of(pair, outcome.seeds);
  doc["core"] = {{"nodes", labels_of(pair, outcome.core)}, {"coherence", outcome.core_score}};

  auto subgraphs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < outcome.subgraphs.size(); ++i) {
    const auto& g = outcome.subgraphs[i];
    subgraphs.push_back({
        {"rank", i + 1},
        {"nodes", labels_of(pair, g.nodes)},
        {"added", labels_of(pair, set_difference(g.nodes, outcome.core))},
        {"contrast", g.score},
    });
  }
  doc["contrast_subgraphs"] = std::move(subgraphs);

  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : outcome.annotations) {
    edges.push_back({
        {"u", pair.labels().label(e.u)},
        {"v", pair.labels().label(e.v)},
        {"weight_a", e.weight_a},
        {"weight_b", e.weight_b},
        {"coherence", e.coherence},
        {"contrast", e.contrast},
    });
  }
  doc["edges"] = std::move(edges);
  doc["warnings"] = outcome.warnings;
  return doc;
}

void write_outcome_dot(std::ostream& out, const GraphPair& pair, const MiningOutcome& outcome) {
  out << "graph contrast {\n";
  out << "  node [style=filled, fillcolor=white];\n";
  if (!outcome.subgraphs.empty()) {
    const NodeSet& nodes = outcome.subgraphs.front().nodes;
    std::vector<double> balance(pair.node_count(), 0.0);
    for (const auto& e : outcome.annotations) {
      balance[e.u] += e.weight_a - e.weight_b;
      balance[e.v] += e.weight_a - e.weight_b;
    }
    for (NodeIndex u : nodes) {
      const std::string& label = pair.labels().label(u);
      if (std::binary_search(outcome.core.begin(), outcome.core.end(), u)) {
        out << "  " << quoted(label) << " [shape=box, label=" << quoted(label) << "];\n";
      } else {
        const bool plus = balance[u] >= 0.0;
        out << "  " << quoted(label) << " [shape=ellipse, fillcolor=" << (plus ? "salmon" : "lightblue")
            << ", label=" << quoted(label + (plus ? " (+)" : " (-)")) << "];\n";
      }
    }
    for (const auto& e : outcome.annotations) {
      out << "  " << quoted(pair.labels().label(e.u)) << " -- " << quoted(pair.labels().label(e.v))
          << " [label=" << quoted(format_double(e.weight_a - e.weight_b)) << "];\n";
    }
  }
  out << "}\n";
}

void write_outcome_csv(std::ostream& out, const GraphPair& pair, const MiningOutcome& outcome) {
  auto order = display_order(pair, outcome);
  write_matrix_csv(out, export_matrix(pair, order), order);
}

}  // namespace csm
