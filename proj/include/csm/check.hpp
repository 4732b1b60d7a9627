#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "csm/datagen.hpp"
#include "csm/miner.hpp"
#include "csm/solver.hpp"

namespace csm {

/// Anything that claims to maximize an instance; swapped out by tests to
/// make sure the harness catches a wrong solver.
using SolverFn = std::function<ScoredSet(const DensityInstance&)>;

/// The default: maximize() with default options.
SolverFn exact_solver();

struct CheckRow {
  std::string name;
  std::size_t free_nodes = 0;
  double solver = 0.0;
  double oracle = 0.0;
  double greedy = 0.0;
  bool pass = false;
};

/// Runs solver, brute_force and greedy_peel on one instance. Passes iff the
/// solver's set contains the anchor, its reported score matches a direct
/// evaluation, and that score is within 1e-6 relative of the oracle.
CheckRow compare_on(const DensityInstance& instance, std::string name, const SolverFn& solver);

/// Random small trial: a pair with at most 20 nodes, 1-2 random seeds and
/// r in {1, 2}, yielding the core-phase instance and the contrast-phase
/// instance anchored on the oracle's core. Free nodes are capped at 16.
struct Trial {
  GraphPair pair;
  NodeSet seeds;
  HopCount radius = 1;
  std::vector<DensityInstance> instances;
};

Trial random_trial(std::uint64_t seed, WeightKind kind);

/// One row per instance plus a passed/total summary line.
void print_check_table(std::ostream& out, const std::vector<CheckRow>& rows);

}  // namespace csm
