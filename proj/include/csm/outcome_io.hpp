#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "csm/graph_pair.hpp"
#include "csm/miner.hpp"

namespace csm {

/// Schema version written into every outcome document.
inline constexpr int kOutcomeSchemaVersion = 1;

/// Mining outcome as JSON (layout in docs/mining_outcome.schema.json).
/// Key order is fixed so identical outcomes serialize byte-identically.
nlohmann::ordered_json outcome_to_json(const GraphPair& pair, const MiningOutcome& outcome);

/// Graphviz rendering of the first contrast subgraph: core nodes are boxes,
/// added nodes are tagged and colored by the sign of their summed E_A - E_B.
void write_outcome_dot(std::ostream& out, const GraphPair& pair, const MiningOutcome& outcome);

/// Dense A/B weight matrices over the first contrast subgraph, core first.
void write_outcome_csv(std::ostream& out, const GraphPair& pair, const MiningOutcome& outcome);

}  // namespace csm
