#include "csm/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace csm {

FlowNetwork::FlowNetwork(std::size_t node_count, NodeIndex source, NodeIndex sink)
    : source_(source), sink_(sink), head_(node_count) {
  if (source >= node_count || sink >= node_count) throw InputError("terminal index out of range");
  if (source == sink) throw InputError("source and sink must differ");
}

void FlowNetwork::check_mutable(NodeIndex u, NodeIndex v) const {
  if (result_) throw StateError("flow network already solved");
  if (u >= head_.size() || v >= head_.size()) throw InputError("arc endpoint out of range");
}

void FlowNetwork::push_pair(NodeIndex u, NodeIndex v, double forward, double backward, bool infinite) {
  head_[u].push_back(static_cast<std::uint32_t>(arcs_.size()));
  arcs_.push_back({v, forward, forward, infinite});
  head_[v].push_back(static_cast<std::uint32_t>(arcs_.size()));
  arcs_.push_back({u, backward, backward, false});
}

void FlowNetwork::add_arc(NodeIndex from, NodeIndex to, double capacity) {
  check_mutable(from, to);
  if (!(capacity >= 0.0) || !std::isfinite(capacity)) throw InputError("capacity must be finite and >= 0");
  if (capacity == 0.0 || from == to) return;
  push_pair(from, to, capacity, 0.0, false);
  finite_total_ += capacity;
  largest_finite_ = std::max(largest_finite_, capacity);
}

void FlowNetwork::add_infinite_arc(NodeIndex from, NodeIndex to) {
  check_mutable(from, to);
  if (from == to) return;
  push_pair(from, to, 0.0, 0.0, true);
}

void FlowNetwork::add_undirected_capacity(NodeIndex u, NodeIndex v, double capacity) {
  check_mutable(u, v);
  if (u == v) throw InputError("undirected capacity needs distinct endpoints");
  if (!(capacity >= 0.0) || !std::isfinite(capacity)) throw InputError("capacity must be finite and >= 0");
  if (capacity == 0.0) return;
  push_pair(u, v, capacity, capacity, false);
  finite_total_ += 2.0 * capacity;
  largest_finite_ = std::max(largest_finite_, capacity);
}

void FlowNetwork::finalize() {
  infinity_ = 1.0 + finite_total_;
  tolerance_ = 1e-12 * largest_finite_;
  for (auto& arc : arcs_) {
    if (arc.infinite) arc.capacity = arc.residual = infinity_;
  }
  level_.assign(head_.size(), -1);
  cursor_.assign(head_.size(), 0);
}

bool FlowNetwork::build_levels() {
  std::fill(level_.begin(), level_.end(), -1);
  std::vector<NodeIndex> queue;
  queue.reserve(head_.size());
  queue.push_back(source_);
  level_[source_] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    NodeIndex u = queue[i];
    for (std::uint32_t id : head_[u]) {
      const Arc& arc = arcs_[id];
      if (arc.residual > tolerance_ && level_[arc.to] < 0) {
        level_[arc.to] = level_[u] + 1;
        queue.push_back(arc.to);
      }
    }
  }
  return level_[sink_] >= 0;
}

double FlowNetwork::augment(NodeIndex u, double limit) {
  if (u == sink_) return limit;
  double pushed_total = 0.0;
  auto& ids = head_[u];
  for (std::size_t& i = cursor_[u]; i < ids.size(); ++i) {
    Arc& arc = arcs_[ids[i]];
    if (arc.residual <= tolerance_ || level_[arc.to] != level_[u] + 1) continue;
    double pushed = augment(arc.to, std::min(limit - pushed_total, arc.residual));
    if (pushed > 0.0) {
      arc.residual -= pushed;
      arcs_[ids[i] ^ 1U].residual += pushed;
      pushed_total += pushed;
      if (limit - pushed_total <= tolerance_) return pushed_total;
    }
  }
  return pushed_total;
}

const CutResult& FlowNetwork::max_flow() {
  if (result_) return *result_;
  finalize();

  double flow = 0.0;
  while (build_levels()) {
    std::fill(cursor_.begin(), cursor_.end(), 0);
    while (true) {
      double pushed = augment(source_, std::numeric_limits<double>::infinity());
      if (pushed <= tolerance_) break;
      flow += pushed;
    }
  }

  CutResult result;
  result.flow = flow;
  std::vector<char> seen(head_.size(), 0);
  std::vector<NodeIndex> stack{source_};
  seen[source_] = 1;
  while (!stack.empty()) {
    NodeIndex u = stack.back();
    stack.pop_back();
    for (std::uint32_t id : head_[u]) {
      const Arc& arc = arcs_[id];
      if (arc.residual > tolerance_ && !seen[arc.to]) {
        seen[arc.to] = 1;
        stack.push_back(arc.to);
      }
    }
  }
  for (NodeIndex u = 0; u < head_.size(); ++u) {
    if (seen[u] && u != source_) result.source_side.push_back(u);
  }
  if (seen[sink_]) throw InvariantError("sink reachable in residual graph after max flow");
  result_ = std::move(result);
  return *result_;
}

double FlowNetwork::verify_cut(const CutResult& result) const {
  std::vector<char> inside(head_.size(), 0);
  inside[source_] = 1;
  for (NodeIndex u : result.source_side) inside.at(u) = 1;
  double total = 0.0;
  for (NodeIndex u = 0; u < head_.size(); ++u) {
    if (!inside[u]) continue;
    for (std::uint32_t id : head_[u]) {
      const Arc& arc = arcs_[id];
      if (!inside[arc.to]) total += arc.infinite && !result_ ? 1.0 + finite_total_ : arc.capacity;
    }
  }
  return total;
}

double FlowNetwork::net_outflow(NodeIndex node) const {
  double net = 0.0;
  for (std::uint32_t id : head_.at(node)) net += arcs_[id].capacity - arcs_[id].residual;
  return net;
}

}  // namespace csm
