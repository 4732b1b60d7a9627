#include "csm/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace csm {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InputError("Rng::below needs a positive bound");
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

void PlantSpec::validate() const {
  if (core_size == 0 && contrast_size > 0) throw InputError("a contrast block needs a non-empty core");
  if (core_size + contrast_size + noise_blocks * noise_block_size > nodes) {
    throw InputError("planted blocks exceed the node count");
  }
  if (!(background_probability >= 0.0 && background_probability <= 1.0)) {
    throw InputError("background probability must lie in [0, 1]");
  }
  if (!(background_weight_min > 0.0) || background_weight_max < background_weight_min) {
    throw InputError("background weights need 0 < min <= max");
  }
  if (!(core_weight > 0.0) || !(contrast_weight > 0.0) || !(noise_weight > 0.0)) {
    throw InputError("planted weights must be positive");
  }
  if (noise_blocks > 0 && noise_block_size < 2) throw InputError("noise blocks need at least 2 nodes");
}

namespace {

NodeLabels numbered_labels(std::size_t n) {
  NodeLabels labels;
  for (std::size_t i = 0; i < n; ++i) labels.intern("v" + std::to_string(i));
  return labels;
}

void add_clique(std::vector<Edge>& edges, const NodeSet& nodes, double weight) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) edges.push_back({nodes[i], nodes[j], weight});
  }
}

using PairKey = std::pair<NodeIndex, NodeIndex>;

// Bernoulli(p) over every unordered pair of `n` nodes, enumerated row by row
// with geometric skips so sparse draws cost O(edges) rather than O(n^2).
template <typename Visit>
void sample_pairs(Rng& rng, std::size_t n, double p, Visit&& visit) {
  if (p <= 0.0 || n < 2) return;
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const double log_q = std::log1p(-std::min(p, 1.0 - 1e-16));
  std::uint64_t index = 0;
  NodeIndex row = 0;
  std::uint64_t row_start = 0;  // linear index of (row, row + 1)
  while (true) {
    if (p < 1.0) {
      const double skip = std::floor(std::log1p(-rng.uniform()) / log_q);
      if (skip >= static_cast<double>(total - index)) return;
      index += static_cast<std::uint64_t>(skip);
    }
    if (index >= total) return;
    while (index >= row_start + (n - 1 - row)) {
      row_start += n - 1 - row;
      ++row;
    }
    const auto col = static_cast<NodeIndex>(row + 1 + (index - row_start));
    visit(row, col);
    ++index;
  }
}

}  // namespace

PlantedInstance generate(const PlantSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const std::size_t n = spec.nodes;

  std::vector<NodeIndex> perm(n);
  std::iota(perm.begin(), perm.end(), NodeIndex{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);

  PlantedInstance out;
  std::size_t next = 0;
  auto take = [&](std::size_t count) {
    NodeSet block(perm.begin() + static_cast<std::ptrdiff_t>(next),
                  perm.begin() + static_cast<std::ptrdiff_t>(next + count));
    next += count;
    normalize(block);
    return block;
  };
  out.core = take(spec.core_size);
  out.contrast = take(spec.contrast_size);

  std::vector<Edge> a;
  std::vector<Edge> b;
  add_clique(a, out.core, spec.core_weight);
  add_clique(b, out.core, spec.core_weight);
  add_clique(a, out.contrast, spec.contrast_weight);
  for (NodeIndex g : out.contrast) {
    NodeIndex c = out.core[rng.below(out.core.size())];
    a.push_back({std::min(g, c), std::max(g, c), spec.contrast_weight});
  }
  for (std::size_t k = 0; k < spec.noise_blocks; ++k) {
    NodeSet block = take(spec.noise_block_size);
    add_clique(k % 2 == 0 ? a : b, block, spec.noise_weight);
    out.noise = set_union(out.noise, block);
  }

  std::set<PairKey> planted;
  for (const auto* list : {&a, &b}) {
    for (const Edge& e : *list) planted.insert(std::minmax(e.u, e.v));
  }
  for (auto* list : {&a, &b}) {
    sample_pairs(rng, n, spec.background_probability, [&](NodeIndex u, NodeIndex v) {
      const double w = rng.uniform(spec.background_weight_min, spec.background_weight_max);
      if (!planted.contains({u, v})) list->push_back({u, v, w});
    });
  }

  out.pair = GraphPair::from_edges(numbered_labels(n), a, b);
  return out;
}

GraphPair random_pair(std::size_t nodes, double edge_probability, double shared_probability,
                      WeightKind kind, std::uint64_t seed) {
  Rng rng(seed);
  auto draw = [&] {
    if (kind == WeightKind::Integer) return static_cast<double>(1 + rng.below(5));
    return std::log(static_cast<double>(1 + rng.below(20))) + 1.0;
  };
  std::vector<Edge> a;
  std::vector<Edge> b;
  for (NodeIndex u = 0; u < nodes; ++u) {
    for (NodeIndex v = u + 1; v < nodes; ++v) {
      if (rng.bernoulli(shared_probability)) {
        const double w = draw();
        a.push_back({u, v, w});
        b.push_back({u, v, w});
        continue;
      }
      if (rng.bernoulli(edge_probability)) a.push_back({u, v, draw()});
      if (rng.bernoulli(edge_probability)) b.push_back({u, v, draw()});
    }
  }
  return GraphPair::from_edges(numbered_labels(nodes), a, b);
}

}  // namespace csm
