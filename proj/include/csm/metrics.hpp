#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "csm/types.hpp"

namespace csm {

/// Per-edge score from the two weights (E_A(u,v), E_B(u,v)). Must be pure
/// and return a non-negative value for non-negative inputs.
using EdgeScoreFn = std::function<double(double weight_a, double weight_b)>;

/// Per-node penalty. Must be pure and strictly positive.
using PenaltyFn = std::function<double(NodeIndex)>;

/// min(wA, wB): an edge is only as coherent as its weaker side.
inline double default_coherence(double weight_a, double weight_b) {
  return weight_a < weight_b ? weight_a : weight_b;
}

/// |wA - wB|.
inline double default_contrast(double weight_a, double weight_b) {
  return weight_a > weight_b ? weight_a - weight_b : weight_b - weight_a;
}

inline double default_penalty(NodeIndex) { return 1.0; }

struct MetricSet {
  EdgeScoreFn coherence = default_coherence;
  EdgeScoreFn contrast = default_contrast;
  PenaltyFn penalty = default_penalty;
  std::string coherence_name = "min";
  std::string contrast_name = "absdiff";
  std::string penalty_name = "uniform";

  /// Built-in metrics by CLI name: coherence `min`, contrast `absdiff`,
  /// penalty `uniform`. Throws InputError for anything else.
  static MetricSet by_name(std::string_view coherence, std::string_view contrast,
                           std::string_view penalty);
};

struct AxiomCounterexample {
  double weight_a;
  double weight_b;
  std::string detail;
};

struct AxiomCheck {
  bool passed = true;
  std::optional<AxiomCounterexample> counterexample;
};

struct AxiomReport {
  AxiomCheck symmetric;
  AxiomCheck zero;
  AxiomCheck monotone;

  bool all_passed() const { return symmetric.passed && zero.passed && monotone.passed; }
};

/// Empirically checks the contrast axioms on `samples`:
///  - symmetric: f(a,b) == f(b,a)
///  - zero: f(x,x) == 0 for every value appearing in a sample
///  - monotone: with lo <= hi, raising hi or lowering lo (while >= 0) by a
///    relative step of 1e-3 strictly increases f
/// Each failed check carries the first counterexample found.
AxiomReport check_axioms(const EdgeScoreFn& metric, std::span<const std::pair<double, double>> samples);

}  // namespace csm
