#include "csm/check.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace csm {

SolverFn exact_solver() {
  return [](const DensityInstance& instance) {
    auto result = maximize(instance);
    return ScoredSet{std::move(result.subset), result.score};
  };
}

CheckRow compare_on(const DensityInstance& instance, std::string name, const SolverFn& solver) {
  CheckRow row;
  row.name = std::move(name);
  row.free_nodes = instance.size() - instance.anchor().size();
  const ScoredSet got = solver(instance);
  const ScoredSet oracle = brute_force(instance);
  const ScoredSet greedy = greedy_peel(instance);
  row.solver = got.score;
  row.oracle = oracle.score;
  row.greedy = greedy.score;

  const double tolerance = 1e-6 * std::max(1.0, std::abs(oracle.score));
  bool consistent = !got.nodes.empty() && is_subset(instance.anchor(), got.nodes) &&
                    is_subset(got.nodes, instance.candidates());
  if (consistent) consistent = std::abs(evaluate(instance, got.nodes) - got.score) <= tolerance;
  row.pass = consistent && std::abs(got.score - oracle.score) <= tolerance;
  return row;
}

Trial random_trial(std::uint64_t seed, WeightKind kind) {
  Rng rng(seed);
  Trial trial;
  const std::size_t n = 6 + rng.below(15);  // 6..20
  const double p = rng.uniform(0.1, 0.35);
  const double shared = rng.uniform(0.05, 0.25);
  trial.pair = random_pair(n, p, shared, kind, rng.below(1ULL << 62));
  const std::size_t seed_count = 1 + rng.below(2);
  while (trial.seeds.size() < seed_count) {
    trial.seeds.push_back(static_cast<NodeIndex>(rng.below(n)));
    normalize(trial.seeds);
  }
  trial.radius = static_cast<HopCount>(1 + rng.below(2));

  auto capped_ball = [&](const NodeSet& anchor) {
    NodeSet ball = neighbors(trial.pair, anchor, trial.radius);
    if (ball.size() - anchor.size() > 16) ball = neighbors(trial.pair, anchor, 1);
    if (ball.size() - anchor.size() > 16) {
      NodeSet kept = anchor;
      for (NodeIndex u : set_difference(ball, anchor)) {
        if (kept.size() - anchor.size() == 16) break;
        kept.push_back(u);
      }
      normalize(kept);
      ball = std::move(kept);
    }
    return ball;
  };

  const MetricSet metrics;
  trial.instances.push_back(
      make_instance(trial.pair, metrics.coherence, metrics.penalty, trial.seeds, capped_ball(trial.seeds)));
  NodeSet core = brute_force(trial.instances.front()).nodes;
  trial.instances.push_back(
      make_instance(trial.pair, metrics.contrast, metrics.penalty, core, capped_ball(core)));
  return trial;
}

void print_check_table(std::ostream& out, const std::vector<CheckRow>& rows) {
  char line[256];
  std::snprintf(line, sizeof(line), "%-24s %5s %14s %14s %14s  %s\n", "instance", "free", "solver",
                "brute_force", "greedy_peel", "result");
  out << line;
  std::size_t passed = 0;
  for (const auto& row : rows) {
    std::snprintf(line, sizeof(line), "%-24s %5zu %14.9g %14.9g %14.9g  %s\n", row.name.c_str(),
                  row.free_nodes, row.solver, row.oracle, row.greedy, row.pass ? "PASS" : "FAIL");
    out << line;
    passed += row.pass ? 1 : 0;
  }
  out << passed << "/" << rows.size() << " passed\n";
}

}  // namespace csm
