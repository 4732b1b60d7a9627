#include "csm/miner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>

namespace csm {

namespace {

NodeSet all_nodes(const GraphPair& pair) {
  NodeSet out(pair.node_count());
  std::iota(out.begin(), out.end(), NodeIndex{0});
  return out;
}

ScoredSet solve(const DensityInstance& instance, const SolverOptions& options) {
  auto result = maximize(instance, options);
  return {std::move(result.subset), result.score};
}

}  // namespace

DensityInstance make_instance(const GraphPair& pair, const EdgeScoreFn& score, const PenaltyFn& penalty,
                              NodeSet anchor, NodeSet candidates) {
  normalize(candidates);
  std::vector<char> member(pair.node_count(), 0);
  for (NodeIndex u : candidates) {
    if (u >= pair.node_count()) throw InputError("candidate index out of range");
    member[u] = 1;
  }

  std::vector<ScoredPair> scores;
  for (NodeIndex u : candidates) {
    auto a = pair.neighbors(Side::A, u);
    auto b = pair.neighbors(Side::B, u);
    auto ia = a.begin();
    auto ib = b.begin();
    // Merge the two sorted neighbor lists so every pair is scored once.
    while (ia != a.end() || ib != b.end()) {
      NodeIndex v;
      double wa = 0.0;
      double wb = 0.0;
      if (ib == b.end() || (ia != a.end() && ia->node < ib->node)) {
        v = ia->node;
        wa = (ia++)->weight;
      } else if (ia == a.end() || ib->node < ia->node) {
        v = ib->node;
        wb = (ib++)->weight;
      } else {
        v = ia->node;
        wa = (ia++)->weight;
        wb = (ib++)->weight;
      }
      if (v <= u || !member[v]) continue;
      const double s = score(wa, wb);
      if (s < 0.0 || !std::isfinite(s)) throw InputError("edge metric returned a negative or non-finite value");
      if (s > 0.0) scores.push_back({u, v, s});
    }
  }

  std::vector<double> penalties;
  penalties.reserve(candidates.size());
  for (NodeIndex u : candidates) penalties.push_back(penalty(u));
  double universe = 0.0;
  for (NodeIndex u = 0; u < pair.node_count(); ++u) universe += penalty(u);

  return DensityInstance(std::move(candidates), std::move(anchor), std::move(penalties), scores, universe);
}

ScoredSet find_core(const GraphPair& pair, const MetricSet& metrics, const NodeSet& seeds,
                    HopCount radius, const SolverOptions& options) {
  NodeSet candidates = seeds.empty() ? all_nodes(pair) : neighbors(pair, seeds, radius);
  return solve(make_instance(pair, metrics.coherence, metrics.penalty, seeds, std::move(candidates)), options);
}

ScoredSet find_contrast(const GraphPair& pair, const MetricSet& metrics, const NodeSet& core,
                        HopCount radius, const SolverOptions& options) {
  if (core.empty()) throw InputError("find_contrast needs a non-empty core");
  NodeSet candidates = neighbors(pair, core, radius);
  return solve(make_instance(pair, metrics.contrast, metrics.penalty, core, std::move(candidates)), options);
}

NodeSet resolve_seeds(const GraphPair& pair, const std::vector<std::string>& labels) {
  NodeSet seeds;
  for (const auto& label : labels) seeds.push_back(pair.labels().at(label));
  normalize(seeds);
  return seeds;
}

MiningOutcome mine(const GraphPair& pair, const MetricSet& metrics, const NodeSet& seeds_in,
                   const MiningOptions& options) {
  if (options.max_subgraphs < 1) throw InputError("max subgraphs must be >= 1");
  MiningOutcome out;
  out.seeds = seeds_in;
  normalize(out.seeds);
  for (NodeIndex s : out.seeds) {
    if (s >= pair.node_count()) throw InputError("seed index out of range");
  }
  out.radius = options.radius;
  out.radius_grow = options.radius_grow.value_or(options.radius);
  out.use_core = options.use_core;
  out.use_neighborhood = options.use_neighborhood;
  if (auto warning = scale_mismatch_warning(pair)) out.warnings.push_back(*warning);

  auto pool_around = [&](const NodeSet& anchor, HopCount radius) {
    return options.use_neighborhood && !anchor.empty() ? neighbors(pair, anchor, radius) : all_nodes(pair);
  };

  if (options.use_core) {
    auto instance = make_instance(pair, metrics.coherence, metrics.penalty, out.seeds,
                                  pool_around(out.seeds, options.radius));
    auto core = maximize(instance, options.solver);
    if (core.score > 0.0) {
      out.core = std::move(core.subset);
      out.core_score = core.score;
    } else {
      out.warnings.push_back("no coherent edges around the seeds; using the seeds as the core");
      out.core = out.seeds;
    }
  } else {
    out.core = out.seeds;
  }
  if (!out.core.empty() && out.core_score == 0.0) {
    auto instance = make_instance(pair, metrics.coherence, metrics.penalty, out.core, out.core);
    out.core_score = evaluate(instance, out.core);
  }

  NodeSet pool = pool_around(out.core, out.radius_grow);
  for (std::size_t i = 0; i < options.max_subgraphs; ++i) {
    auto instance = make_instance(pair, metrics.contrast, metrics.penalty, out.core, pool);
    auto found = maximize(instance, options.solver);
    NodeSet added = set_difference(found.subset, out.core);
    if (i > 0 && added.empty()) break;
    if (found.subset.empty()) break;
    out.subgraphs.push_back({std::move(found.subset), found.score});
    if (added.empty()) break;
    pool = set_difference(pool, added);
  }

  if (!out.subgraphs.empty()) {
    const NodeSet& first = out.subgraphs.front().nodes;
    for (std::size_t i = 0; i < first.size(); ++i) {
      for (std::size_t j = i + 1; j < first.size(); ++j) {
        const NodeIndex u = first[i];
        const NodeIndex v = first[j];
        const double wa = pair.weight(Side::A, u, v);
        const double wb = pair.weight(Side::B, u, v);
        if (wa == 0.0 && wb == 0.0) continue;
        out.annotations.push_back({u, v, wa, wb, metrics.coherence(wa, wb), metrics.contrast(wa, wb)});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Oracles

ScoredSet brute_force(const DensityInstance& instance) {
  const std::size_t n = instance.size();
  std::vector<std::size_t> free_nodes;
  for (std::size_t u = 0; u < n; ++u) {
    if (!instance.is_anchor(u)) free_nodes.push_back(u);
  }
  const std::size_t m = free_nodes.size();
  if (m > kBruteForceCap) {
    throw InputError("brute force limited to " + std::to_string(kBruteForceCap) + " free nodes, got " +
                     std::to_string(m));
  }

  std::vector<char> member(n, 0);
  double weight = 0.0;
  double penalty = 0.0;
  auto toggle = [&](std::size_t u) {
    double incident = 0.0;
    for (const auto& e : instance.edges(u)) {
      if (member[e.to]) incident += e.score;
    }
    if (member[u]) {
      member[u] = 0;
      weight -= incident;
      penalty -= instance.penalty(u);
    } else {
      member[u] = 1;
      weight += incident;
      penalty += instance.penalty(u);
    }
  };
  for (std::size_t u = 0; u < n; ++u) {
    if (instance.is_anchor(u)) toggle(u);
  }

  auto current_set = [&] {
    NodeSet set;
    for (std::size_t u = 0; u < n; ++u) {
      if (member[u]) set.push_back(instance.candidates()[u]);
    }
    return set;
  };

  ScoredSet best;
  bool have_best = false;
  auto consider = [&] {
    if (penalty <= 0.0) return;  // empty set
    const double density = weight / penalty;
    const double tolerance = 1e-12 * std::max(1.0, std::abs(density));
    if (!have_best || density > best.score + tolerance) {
      best = {current_set(), density};
      have_best = true;
    } else if (density >= best.score - tolerance) {
      NodeSet set = current_set();
      if (set < best.nodes) best.nodes = std::move(set);
    }
  };

  consider();
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t k = 1; k < total; ++k) {
    toggle(free_nodes[static_cast<std::size_t>(std::countr_zero(k))]);
    consider();
  }
  if (have_best) best.score = evaluate(instance, best.nodes);
  return best;
}

ScoredSet greedy_peel(const DensityInstance& instance) {
  const std::size_t n = instance.size();
  if (n == 0) return {};
  std::vector<char> alive(n, 1);
  std::vector<double> degree(n);
  double weight = instance.total_score();
  double penalty = 0.0;
  std::set<std::pair<double, std::size_t>> queue;
  for (std::size_t u = 0; u < n; ++u) {
    degree[u] = instance.degree(u);
    penalty += instance.penalty(u);
    if (!instance.is_anchor(u)) queue.insert({degree[u], u});
  }
  std::size_t remaining = n;
  double best_density = weight / penalty;
  std::size_t best_removed = 0;
  std::vector<std::size_t> order;

  while (!queue.empty() && remaining > 1) {
    auto [d, u] = *queue.begin();
    queue.erase(queue.begin());
    alive[u] = 0;
    --remaining;
    order.push_back(u);
    weight -= d;
    penalty -= instance.penalty(u);
    for (const auto& e : instance.edges(u)) {
      if (!alive[e.to]) continue;
      if (!instance.is_anchor(e.to)) queue.erase({degree[e.to], e.to});
      degree[e.to] -= e.score;
      if (!instance.is_anchor(e.to)) queue.insert({degree[e.to], e.to});
    }
    const double density = weight / penalty;
    if (density > best_density) {
      best_density = density;
      best_removed = order.size();
    }
  }

  std::vector<char> keep(n, 1);
  for (std::size_t i = 0; i < best_removed; ++i) keep[order[i]] = 0;
  ScoredSet out;
  for (std::size_t u = 0; u < n; ++u) {
    if (keep[u]) out.nodes.push_back(instance.candidates()[u]);
  }
  out.score = evaluate(instance, out.nodes);
  return out;
}

}  // namespace csm
