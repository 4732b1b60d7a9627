#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace csm {

/// Dense internal node index in [0, |V|).
using NodeIndex = std::uint32_t;

/// Sorted, duplicate-free list of node indices.
using NodeSet = std::vector<NodeIndex>;

/// Bad user input: malformed files, unknown labels, invalid parameters.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant was violated. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Operation issued in the wrong object state (e.g. mutating a solved network).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Sorts and deduplicates in place.
void normalize(NodeSet& nodes);

/// True iff every element of `sub` is in `super`. Both must be normalized.
bool is_subset(const NodeSet& sub, const NodeSet& super);

NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);

}  // namespace csm
