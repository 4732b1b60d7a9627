#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "csm/datagen.hpp"
#include "csm/miner.hpp"
#include "oracles.hpp"

namespace csm {
namespace {

PlantSpec small_spec() {
  PlantSpec spec;
  spec.nodes = 50;
  spec.core_size = 5;
  spec.contrast_size = 8;
  spec.core_weight = 2.0;
  spec.contrast_weight = 3.0;
  spec.seed = 3;
  return spec;
}

std::string dump(const GraphPair& p, Side side) {
  std::ostringstream os;
  write_edge_list(os, p, side);
  return os.str();
}

TEST(Rng, BelowStaysInRangeAndCoversIt) {
  Rng rng(9);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    auto x = rng.below(7);
    ASSERT_LT(x, 7u);
    seen.insert(x);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_THROW(rng.below(0), InputError);
}

TEST(Generate, BlockStructure) {
  auto inst = generate(small_spec());
  const auto& p = inst.pair;
  ASSERT_EQ(p.node_count(), 50u);
  ASSERT_EQ(inst.core.size(), 5u);
  ASSERT_EQ(inst.contrast.size(), 8u);

  for (NodeIndex u : inst.core) {
    for (NodeIndex v : inst.core) {
      if (u == v) continue;
      EXPECT_EQ(p.weight(Side::A, u, v), 2.0);
      EXPECT_EQ(p.weight(Side::B, u, v), 2.0);
    }
  }
  for (NodeIndex u : inst.contrast) {
    bool touches_core = false;
    for (NodeIndex c : inst.core) touches_core = touches_core || p.weight(Side::A, u, c) > 0.0;
    EXPECT_TRUE(touches_core);
    for (NodeIndex v : inst.contrast) {
      if (u == v) continue;
      EXPECT_EQ(p.weight(Side::A, u, v), 3.0);
      EXPECT_EQ(p.weight(Side::B, u, v), 0.0);
    }
  }
  // No background: A has the two cliques plus one link per contrast node.
  EXPECT_EQ(p.edge_count(Side::A), 10u + 28u + 8u);
  EXPECT_EQ(p.edge_count(Side::B), 10u);
}

TEST(Generate, CoreCoherenceClosedForm) {
  auto inst = generate(small_spec());
  auto core = find_core(inst.pair, MetricSet{}, {inst.core.front()}, 1);
  EXPECT_EQ(core.nodes, inst.core);
  EXPECT_DOUBLE_EQ(core.score, 2.0 * 10.0 / 5.0);
}

TEST(Generate, NoContrastBlockMeansIdenticalGraphs) {
  auto spec = small_spec();
  spec.contrast_size = 0;
  auto inst = generate(spec);
  EXPECT_EQ(dump(inst.pair, Side::A), dump(inst.pair, Side::B));
  auto g = find_contrast(inst.pair, MetricSet{}, inst.core, 2);
  EXPECT_EQ(g.nodes, inst.core);
  EXPECT_EQ(g.score, 0.0);
}

TEST(Generate, Deterministic) {
  auto spec = small_spec();
  spec.background_probability = 0.05;
  spec.noise_blocks = 2;
  spec.noise_block_size = 4;
  auto x = generate(spec);
  auto y = generate(spec);
  EXPECT_EQ(dump(x.pair, Side::A), dump(y.pair, Side::A));
  EXPECT_EQ(dump(x.pair, Side::B), dump(y.pair, Side::B));
  EXPECT_EQ(x.core, y.core);
  EXPECT_EQ(x.noise, y.noise);
  spec.seed += 1;
  EXPECT_NE(dump(generate(spec).pair, Side::A), dump(x.pair, Side::A));
}

TEST(Generate, BackgroundWeightsInRange) {
  auto spec = small_spec();
  spec.background_probability = 0.1;
  auto inst = generate(spec);
  std::size_t background = 0;
  for (Side side : {Side::A, Side::B}) {
    for (const auto& e : inst.pair.edges(side)) {
      if (e.weight == 2.0 || e.weight == 3.0) continue;
      ++background;
      EXPECT_GE(e.weight, spec.background_weight_min);
      EXPECT_LE(e.weight, spec.background_weight_max);
    }
  }
  // Expected count is about 0.1 * 2 * C(50, 2) = 245.
  EXPECT_GT(background, 150u);
  EXPECT_LT(background, 350u);
}

TEST(Generate, NoiseBlocksAlternateSides) {
  auto spec = small_spec();
  spec.noise_blocks = 2;
  spec.noise_block_size = 4;
  auto inst = generate(spec);
  ASSERT_EQ(inst.noise.size(), 8u);
  EXPECT_EQ(inst.pair.edge_count(Side::A), 10u + 28u + 8u + 6u);
  EXPECT_EQ(inst.pair.edge_count(Side::B), 10u + 6u);
}

TEST(PlantSpec, Validation) {
  auto bad = small_spec();
  bad.core_size = 0;
  EXPECT_THROW(generate(bad), InputError);
  bad = small_spec();
  bad.core_size = 45;
  bad.contrast_size = 10;
  EXPECT_THROW(bad.validate(), InputError);
  bad = small_spec();
  bad.background_probability = 1.5;
  EXPECT_THROW(bad.validate(), InputError);
  bad = small_spec();
  bad.core_weight = 0.0;
  EXPECT_THROW(bad.validate(), InputError);
  bad = small_spec();
  bad.noise_blocks = 1;
  bad.noise_block_size = 40;
  EXPECT_THROW(bad.validate(), InputError);
  EXPECT_NO_THROW(small_spec().validate());
}

TEST(RandomPair, SizeAndDeterminism) {
  auto p = random_pair(12, 0.3, 0.2, WeightKind::Integer, 4);
  EXPECT_EQ(p.node_count(), 12u);
  EXPECT_EQ(dump(p, Side::A), dump(random_pair(12, 0.3, 0.2, WeightKind::Integer, 4), Side::A));
  for (const auto& e : p.edges(Side::A)) {
    EXPECT_GE(e.weight, 1.0);
    EXPECT_LE(e.weight, 5.0);
    EXPECT_EQ(e.weight, std::round(e.weight));
  }
}

}  // namespace
}  // namespace csm
