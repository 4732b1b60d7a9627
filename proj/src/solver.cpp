#include "csm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "csm/maxflow.hpp"
#include "format.hpp"

namespace csm {

DensityInstance::DensityInstance(NodeSet candidates, NodeSet anchor, std::vector<double> penalties,
                                 std::span<const ScoredPair> scores, double universe_penalty)
    : candidates_(std::move(candidates)),
      anchor_(std::move(anchor)),
      penalties_(std::move(penalties)),
      universe_penalty_(universe_penalty) {
  if (!std::is_sorted(candidates_.begin(), candidates_.end()) ||
      std::adjacent_find(candidates_.begin(), candidates_.end()) != candidates_.end()) {
    throw InputError("candidate set must be sorted and duplicate-free");
  }
  normalize(anchor_);
  if (!is_subset(anchor_, candidates_)) throw InputError("anchor must be a subset of the candidates");
  if (penalties_.size() != candidates_.size()) throw InputError("one penalty per candidate required");

  const std::size_t n = candidates_.size();
  double penalty_sum = 0.0;
  min_penalty_ = n ? penalties_.front() : 0.0;
  for (double p : penalties_) {
    if (!(p > 0.0) || !std::isfinite(p)) throw InputError("node penalties must be positive");
    penalty_sum += p;
    min_penalty_ = std::min(min_penalty_, p);
  }
  if (universe_penalty_ < penalty_sum * (1.0 - 1e-12)) {
    throw InputError("universe penalty must cover the candidate penalties");
  }

  in_anchor_.assign(n, 0);
  for (NodeIndex a : anchor_) in_anchor_[*local_of(a)] = 1;

  adjacency_.resize(n);
  degree_.assign(n, 0.0);
  for (const ScoredPair& s : scores) {
    if (!(s.score >= 0.0) || !std::isfinite(s.score)) throw InputError("edge scores must be >= 0");
    if (s.score == 0.0) continue;
    auto lu = local_of(s.u);
    auto lv = local_of(s.v);
    if (!lu || !lv) throw InputError("scored pair references a non-candidate node");
    if (*lu == *lv) throw InputError("scored pair must join distinct nodes");
    adjacency_[*lu].push_back({*lv, s.score});
    adjacency_[*lv].push_back({*lu, s.score});
    degree_[*lu] += s.score;
    degree_[*lv] += s.score;
    total_score_ += s.score;
    min_score_ = min_score_ == 0.0 ? s.score : std::min(min_score_, s.score);
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(), [](const LocalEdge& x, const LocalEdge& y) { return x.to < y.to; });
    auto dup = std::adjacent_find(list.begin(), list.end(),
                                  [](const LocalEdge& x, const LocalEdge& y) { return x.to == y.to; });
    if (dup != list.end()) throw InputError("scored pair listed twice");
  }
}

std::optional<std::size_t> DensityInstance::local_of(NodeIndex node) const {
  auto it = std::lower_bound(candidates_.begin(), candidates_.end(), node);
  if (it == candidates_.end() || *it != node) return std::nullopt;
  return static_cast<std::size_t>(it - candidates_.begin());
}

namespace {

std::vector<ScoredPair> collect_pairs(const DensityInstance& instance, double factor) {
  std::vector<ScoredPair> pairs;
  const auto& nodes = instance.candidates();
  for (std::size_t u = 0; u < instance.size(); ++u) {
    for (const auto& e : instance.edges(u)) {
      if (u < e.to) pairs.push_back({nodes[u], nodes[e.to], e.score * factor});
    }
  }
  return pairs;
}

std::vector<double> all_penalties(const DensityInstance& instance) {
  std::vector<double> out(instance.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = instance.penalty(i);
  return out;
}

}  // namespace

DensityInstance DensityInstance::scaled(double factor) const {
  if (!(factor > 0.0)) throw InputError("scale factor must be positive");
  auto pairs = collect_pairs(*this, factor);
  return DensityInstance(candidates_, anchor_, all_penalties(*this), pairs, universe_penalty_);
}

DensityInstance DensityInstance::with_anchor(NodeSet anchor) const {
  auto pairs = collect_pairs(*this, 1.0);
  return DensityInstance(candidates_, std::move(anchor), all_penalties(*this), pairs, universe_penalty_);
}

double evaluate(const DensityInstance& instance, const NodeSet& subset) {
  if (subset.empty()) throw InputError("cannot evaluate the density of an empty subset");
  std::vector<char> member(instance.size(), 0);
  double penalty = 0.0;
  for (NodeIndex node : subset) {
    auto local = instance.local_of(node);
    if (!local) throw InputError("subset node " + std::to_string(node) + " is not a candidate");
    if (member[*local]) continue;
    member[*local] = 1;
    penalty += instance.penalty(*local);
  }
  double weight = 0.0;
  for (std::size_t u = 0; u < instance.size(); ++u) {
    if (!member[u]) continue;
    for (const auto& e : instance.edges(u)) {
      if (u < e.to && member[e.to]) weight += e.score;
    }
  }
  return weight / penalty;
}

std::optional<Bounds> compute_bounds(const DensityInstance& instance) {
  if (instance.total_score() <= 0.0) return std::nullopt;
  Bounds b;
  b.min_score = instance.min_score();
  b.min_penalty = instance.min_penalty();
  const double total_penalty = instance.universe_penalty();
  b.lower = b.min_score / total_penalty;
  b.upper = instance.total_score() / b.min_penalty;
  b.epsilon = b.min_score / (total_penalty * total_penalty);
  return b;
}

FeasibilityProbe probe(const DensityInstance& instance, double delta) {
  if (!(delta >= 0.0)) throw InputError("density threshold must be >= 0");
  const std::size_t n = instance.size();
  const auto source = static_cast<NodeIndex>(n);
  const auto sink = static_cast<NodeIndex>(n + 1);
  const double big_u = instance.total_score();

  FlowNetwork network(n + 2, source, sink);
  for (std::size_t u = 0; u < n; ++u) {
    const auto node = static_cast<NodeIndex>(u);
    if (instance.is_anchor(u)) {
      network.add_infinite_arc(source, node);
    } else {
      network.add_arc(source, node, big_u);
    }
    double to_sink = big_u + 2.0 * delta * instance.penalty(u) - instance.degree(u);
    if (to_sink < 0.0) {
      // U dominates d(u) exactly; only rounding can push this below zero.
      if (to_sink < -1e-9 * std::max(1.0, big_u)) {
        throw InvariantError("negative sink capacity " + format_double(to_sink));
      }
      to_sink = 0.0;
    }
    network.add_arc(node, sink, to_sink);
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& e : instance.edges(u)) {
      if (u < e.to) network.add_undirected_capacity(static_cast<NodeIndex>(u), static_cast<NodeIndex>(e.to), e.score);
    }
  }

  const CutResult& cut = network.max_flow();
  FeasibilityProbe out;
  out.delta = delta;
  out.flow = cut.flow;
  out.baseline = static_cast<double>(n) * big_u;
  out.cut_capacity = network.verify_cut(cut);
  const auto& nodes = instance.candidates();
  for (NodeIndex local : cut.source_side) out.source_side.push_back(nodes[local]);
  out.feasible = out.flow - out.baseline <= 0.0 && !out.source_side.empty();
  return out;
}

std::optional<NodeSet> feasibility(const DensityInstance& instance, double delta) {
  auto p = probe(instance, delta);
  if (!p.feasible) return std::nullopt;
  return std::move(p.source_side);
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Epsilon:
      return "epsilon";
    case StopReason::WindowFloor:
      return "window-floor";
    case StopReason::IterationCap:
      return "iteration-cap";
    case StopReason::NoSignal:
      return "no-signal";
  }
  return "unknown";
}

namespace {

// Endpoints of the highest-scoring pair: a non-empty start for anchorless
// refinement.
NodeSet best_single_edge(const DensityInstance& instance) {
  NodeSet best;
  double best_density = -1.0;
  for (std::size_t u = 0; u < instance.size(); ++u) {
    for (const auto& e : instance.edges(u)) {
      if (u >= e.to) continue;
      double density = e.score / (instance.penalty(u) + instance.penalty(e.to));
      if (density > best_density) {
        best_density = density;
        best = {instance.candidates()[u], instance.candidates()[e.to]};
      }
    }
  }
  return best;
}

}  // namespace

DensityResult maximize(const DensityInstance& instance, const SolverOptions& options) {
  DensityResult result;
  result.subset = instance.anchor();
  result.bounds = compute_bounds(instance);

  if (!result.bounds) {
    result.stop = StopReason::NoSignal;
    if (result.subset.empty() && instance.size() > 0) {
      // Every non-empty subset has density 0; report the smallest one.
      result.subset = {instance.candidates().front()};
    }
    result.score = result.subset.empty() ? 0.0 : evaluate(instance, result.subset);
    return result;
  }

  const Bounds& bounds = *result.bounds;
  double lower = bounds.lower;
  double upper = bounds.upper;
  result.stop = StopReason::Epsilon;
  while (upper - lower > bounds.epsilon) {
    if (result.iterations >= options.max_iterations) {
      result.stop = StopReason::IterationCap;
      break;
    }
    if (upper - lower <= options.window_floor * bounds.upper) {
      result.stop = StopReason::WindowFloor;
      break;
    }
    const double mid = 0.5 * (lower + upper);
    FeasibilityProbe p = probe(instance, mid);
    ++result.iterations;
    if (options.observer) options.observer(p);
    if (p.feasible) {
      lower = mid;
      result.subset = std::move(p.source_side);
    } else {
      upper = mid;
    }
  }
  result.final_window = upper - lower;

  if (options.refine) {
    if (result.subset.empty()) result.subset = best_single_edge(instance);
    double density = evaluate(instance, result.subset);
    while (result.refinements < options.max_refinements) {
      FeasibilityProbe p = probe(instance, density);
      ++result.refinements;
      if (options.observer) options.observer(p);
      if (p.source_side.empty()) break;
      const double candidate = evaluate(instance, p.source_side);
      if (!(candidate > density + 1e-13 * std::max(1.0, density))) break;
      density = candidate;
      result.subset = std::move(p.source_side);
    }
  }

  result.score = result.subset.empty() ? 0.0 : evaluate(instance, result.subset);
  return result;
}

}  // namespace csm
