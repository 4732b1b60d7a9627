#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "csm/graph_pair.hpp"
#include "csm/metrics.hpp"
#include "csm/neighborhood.hpp"
#include "csm/solver.hpp"
#include "csm/types.hpp"

namespace csm {

/// A node set with its density under one edge score.
struct ScoredSet {
  NodeSet nodes;
  double score = 0.0;
};

struct MiningOptions {
  HopCount radius = 1;
  /// Radius for the growth phase; defaults to `radius`.
  std::optional<HopCount> radius_grow;
  std::size_t max_subgraphs = 1;
  /// Ablation: skip the coherent-core phase and anchor growth on the seeds.
  bool use_core = true;
  /// Ablation: use the whole universe instead of radius-r neighborhoods.
  bool use_neighborhood = true;
  SolverOptions solver;
};

struct EdgeAnnotation {
  NodeIndex u;
  NodeIndex v;
  double weight_a;
  double weight_b;
  double coherence;
  double contrast;
};

struct MiningOutcome {
  NodeSet seeds;
  NodeSet core;
  double core_score = 0.0;
  /// In extraction order; scores are non-increasing.
  std::vector<ScoredSet> subgraphs;
  /// Every pair inside the first subgraph with a nonzero weight in A or B.
  std::vector<EdgeAnnotation> annotations;
  std::vector<std::string> warnings;
  HopCount radius = 0;
  HopCount radius_grow = 0;
  bool use_core = true;
  bool use_neighborhood = true;
};

/// Builds a DensityInstance over `candidates` with edge score
/// `score(E_A(u,v), E_B(u,v))` and the given penalty. The universe penalty is
/// summed over every node of `pair`.
DensityInstance make_instance(const GraphPair& pair, const EdgeScoreFn& score, const PenaltyFn& penalty,
                              NodeSet anchor, NodeSet candidates);

/// Most coherent set c with seeds ⊆ c ⊆ N_r(seeds). Empty seeds run the
/// seedless search over the whole universe.
ScoredSet find_core(const GraphPair& pair, const MetricSet& metrics, const NodeSet& seeds,
                    HopCount radius, const SolverOptions& options = {});

/// Most contrasting set g with core ⊆ g ⊆ N_r(core).
ScoredSet find_contrast(const GraphPair& pair, const MetricSet& metrics, const NodeSet& core,
                        HopCount radius, const SolverOptions& options = {});

/// Full pipeline: core once, then up to `max_subgraphs` contrast subgraphs
/// with non-overlapping added nodes.
MiningOutcome mine(const GraphPair& pair, const MetricSet& metrics, const NodeSet& seeds,
                   const MiningOptions& options);

/// Resolves seed labels to a normalized node set. Throws InputError on
/// unknown labels.
NodeSet resolve_seeds(const GraphPair& pair, const std::vector<std::string>& labels);

/// Largest non-anchor candidate count brute_force accepts.
inline constexpr std::size_t kBruteForceCap = 24;

/// Exhaustive search over every anchored subset; ties go to the
/// lexicographically smallest node set. Anchorless instances search
/// non-empty subsets. Throws InputError past kBruteForceCap free nodes.
ScoredSet brute_force(const DensityInstance& instance);

/// Greedy peeling baseline: repeatedly drop the non-anchor node with the
/// smallest weighted degree inside the current set, keep the densest prefix.
ScoredSet greedy_peel(const DensityInstance& instance);

}  // namespace csm
