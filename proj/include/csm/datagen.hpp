#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "csm/graph_pair.hpp"
#include "csm/types.hpp"

namespace csm {

/// Deterministic generator. Draws come straight from the 64-bit engine so
/// streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Planted instance: a core block coherent in both graphs, a contrast block
/// present only in A, optional dense noise blocks present in one graph only,
/// and sparse background noise drawn independently per graph.
struct PlantSpec {
  std::size_t nodes = 200;
  std::size_t core_size = 10;
  std::size_t contrast_size = 15;
  double background_probability = 0.0;
  double background_weight_min = 0.05;
  double background_weight_max = 0.3;
  double core_weight = 2.0;
  double contrast_weight = 3.0;
  /// Blocks alternate between A (even) and B (odd).
  std::size_t noise_blocks = 0;
  std::size_t noise_block_size = 0;
  double noise_weight = 5.0;
  std::uint64_t seed = 1;

  /// Throws InputError describing the first violated constraint.
  void validate() const;
};

struct PlantedInstance {
  GraphPair pair;
  NodeSet core;
  NodeSet contrast;
  NodeSet noise;
};

/// Labels are `v0`..`v{n-1}`; block membership is a seeded permutation. Every
/// contrast node links to at least one core node. Background edges skip
/// pairs already used by the planted structure.
PlantedInstance generate(const PlantSpec& spec);

enum class WeightKind {
  Integer,    ///< uniform in {1..5}
  LogScaled,  ///< ln(c) + 1 with c uniform in {1..20}
};

/// Small random pair for oracle trials: each unordered pair gets an edge in
/// A and independently in B with probability `edge_probability`; with
/// probability `shared_probability` an edge is copied to both graphs.
GraphPair random_pair(std::size_t nodes, double edge_probability, double shared_probability,
                      WeightKind kind, std::uint64_t seed);

}  // namespace csm
