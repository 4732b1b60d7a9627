#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "csm/types.hpp"

namespace csm {

/// A nonzero symmetric edge score between two candidate nodes (global ids).
struct ScoredPair {
  NodeIndex u;
  NodeIndex v;
  double score;
};

/// "Maximize edge-score density over anchored subsets":
///
///   max  sum_{u<v in g} score(u,v) / sum_{u in g} penalty(u)
///   over anchor ⊆ g ⊆ candidates.
///
/// Nodes are stored locally (position in `candidates()`); the public surface
/// speaks global node indices.
class DensityInstance {
 public:
  /// `candidates` and `anchor` are normalized on entry. `penalties[i]` is the
  /// penalty of the i-th candidate in sorted order. `universe_penalty` is the
  /// penalty total over the whole node universe, used by the search bounds.
  /// Throws InputError when anchor is not a subset of candidates, a score
  /// references a non-candidate, a pair repeats, a score is negative, or a
  /// penalty is not positive.
  DensityInstance(NodeSet candidates, NodeSet anchor, std::vector<double> penalties,
                  std::span<const ScoredPair> scores, double universe_penalty);

  struct LocalEdge {
    std::size_t to;
    double score;
  };

  const NodeSet& candidates() const { return candidates_; }
  const NodeSet& anchor() const { return anchor_; }
  std::size_t size() const { return candidates_.size(); }

  bool is_anchor(std::size_t local) const { return in_anchor_[local] != 0; }
  double penalty(std::size_t local) const { return penalties_[local]; }
  /// d(u): sum of scores from u to every other candidate.
  double degree(std::size_t local) const { return degree_[local]; }
  std::span<const LocalEdge> edges(std::size_t local) const { return adjacency_[local]; }

  /// Sum of score(u,v) over candidate pairs u < v (the network's U).
  double total_score() const { return total_score_; }
  /// Smallest nonzero score, 0 if there is none.
  double min_score() const { return min_score_; }
  double min_penalty() const { return min_penalty_; }
  double universe_penalty() const { return universe_penalty_; }

  /// Local position of a global node, or nullopt if it is not a candidate.
  std::optional<std::size_t> local_of(NodeIndex node) const;

  /// Same instance with every score multiplied by `factor` > 0.
  DensityInstance scaled(double factor) const;

  /// Same candidates and scores with a different anchor.
  DensityInstance with_anchor(NodeSet anchor) const;

 private:
  NodeSet candidates_;
  NodeSet anchor_;
  std::vector<char> in_anchor_;
  std::vector<double> penalties_;
  std::vector<std::vector<LocalEdge>> adjacency_;
  std::vector<double> degree_;
  double total_score_ = 0.0;
  double min_score_ = 0.0;
  double min_penalty_ = 0.0;
  double universe_penalty_ = 0.0;
};

/// Density of `subset` (global ids). Throws InputError if `subset` is empty
/// or leaves the candidate set.
double evaluate(const DensityInstance& instance, const NodeSet& subset);

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
  /// Binary search stops once upper - lower <= epsilon.
  double epsilon = 0.0;
  double min_score = 0.0;
  double min_penalty = 0.0;
};

/// Lower/upper density bounds and the minimum density gap. Returns nullopt
/// when every score is zero ("no signal").
std::optional<Bounds> compute_bounds(const DensityInstance& instance);

/// One min-cut check at density `delta`, with everything needed to audit it.
struct FeasibilityProbe {
  double delta = 0.0;
  double flow = 0.0;
  /// |candidates| * U; the check is feasible iff flow - baseline <= 0.
  double baseline = 0.0;
  /// Capacity of the residual source-side cut, recomputed arc by arc.
  double cut_capacity = 0.0;
  /// Residual source side mapped back to global ids (may be empty only
  /// without an anchor).
  NodeSet source_side;
  bool feasible = false;
};

/// Builds the flow network for `delta`, solves it and reports the probe.
/// `feasible` requires flow <= baseline and a non-empty source side.
FeasibilityProbe probe(const DensityInstance& instance, double delta);

/// The witness subset when density `delta` is attainable, nullopt otherwise.
std::optional<NodeSet> feasibility(const DensityInstance& instance, double delta);

enum class StopReason {
  Epsilon,      ///< window shrank to the minimum density gap
  WindowFloor,  ///< window fell below 1e-12 * upper bound
  IterationCap, ///< max_iterations reached
  NoSignal,     ///< all scores zero
};

std::string_view to_string(StopReason reason);

struct SolverOptions {
  std::size_t max_iterations = 200;
  double window_floor = 1e-12;
  /// After the binary search, repeatedly probe at the density of the best
  /// set so far and keep any strictly denser witness. Makes the result exact
  /// even when scores are arbitrary reals.
  bool refine = true;
  std::size_t max_refinements = 64;
  /// Called for every probe, in order (binary search, then refinement).
  std::function<void(const FeasibilityProbe&)> observer;
};

struct DensityResult {
  NodeSet subset;
  double score = 0.0;
  /// Binary-search iterations (refinement probes are counted separately).
  std::size_t iterations = 0;
  std::size_t refinements = 0;
  double final_window = 0.0;
  StopReason stop = StopReason::Epsilon;
  std::optional<Bounds> bounds;
};

/// Binary search over density with a min-cut feasibility check per midpoint.
/// The result always contains the anchor. Without an anchor the result is the
/// densest non-empty subset.
DensityResult maximize(const DensityInstance& instance, const SolverOptions& options = {});

}  // namespace csm
