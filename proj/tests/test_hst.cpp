#include <gtest/gtest.h>

#include "support.hpp"

using namespace ond;

namespace {

// Root at level 1 with two unit leaf edges.
Hst two_leaf(double leaf_len = 1.0, PointId u = 0, PointId v = 1) {
  std::vector<HstNode> nodes(3);
  for (std::size_t i = 1; i <= 2; ++i) {
    nodes[i].parent = 0;
    nodes[i].edge_level = 1;
    nodes[i].edge_len = leaf_len;
  }
  nodes[1].terminal = u;
  nodes[2].terminal = v;
  return Hst(1, nodes);
}

bool has(const std::vector<std::string>& v, const std::string& name) {
  return std::find(v.begin(), v.end(), name) != v.end();
}

}  // namespace

TEST(SampleFrt, TwoPointsGiveMinimalTree) {
  const auto m = build_metric({{0, 1}, {1, 0}});
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto t = sample_frt(m, {0, 1}, s);
    EXPECT_EQ(t.root_level(), 1);
    EXPECT_EQ(t.size(), 3u);
    EXPECT_EQ(t.distance(0, 1), 2.0);
    EXPECT_TRUE(validate_hst(t, m).empty());
  }
}

TEST(SampleFrt, SingleTerminalIsBareRoot) {
  const auto m = ond_test::line({0, 5});
  const auto t = sample_frt(m, {1}, 3);
  EXPECT_EQ(t.size(), 1u);
  EXPECT_EQ(t.total_length(), 0.0);
  EXPECT_EQ(t.distance(1, 1), 0.0);
  EXPECT_TRUE(validate_hst(t, m).empty());
}

TEST(SampleFrt, EmptyTerminalSetThrows) {
  const auto m = ond_test::line({0, 1});
  try {
    sample_frt(m, {}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyTerminalSet);
  }
}

TEST(SampleFrt, LineOfFourIsValidForManySeeds) {
  const auto m = ond_test::line({0, 1, 2, 3});
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto t = sample_frt(m, {0, 1, 2, 3}, s);
    EXPECT_TRUE(validate_hst(t, m).empty()) << "seed " << s;
  }
}

TEST(SampleFrt, ExactPowerOfTwoDiameterAddsLevel) {
  // max distance 4 = 2^2 forces a level-3 root edge budget.
  const auto m = ond_test::line({0, 1, 4});
  const auto t = sample_frt(m, {0, 2}, 9);
  EXPECT_EQ(t.root_level(), 3);
  EXPECT_TRUE(validate_hst(t, m).empty());
}

TEST(SampleFrt, DeterministicPerSeedAndCoincidentPointsSeparate) {
  const auto m = ond_test::line({0, 0, 3, 7, 7.5});
  const auto a = hst_to_json(sample_frt(m, {0, 1, 2, 3, 4}, 11));
  const auto b = hst_to_json(sample_frt(m, {0, 1, 2, 3, 4}, 11));
  EXPECT_EQ(a, b);
  const auto t = sample_frt(m, {0, 1, 2, 3, 4}, 11);
  EXPECT_NE(t.leaf_of(0), t.leaf_of(1));
  EXPECT_TRUE(validate_hst(t, m).empty());
}

TEST(ValidateHst, DetectsBrokenProperties) {
  const auto m = build_metric({{0, 1}, {1, 0}});
  EXPECT_TRUE(validate_hst(two_leaf(), m).empty());
  EXPECT_TRUE(has(validate_hst(two_leaf(0.25), m), "expanding"));

  // Points 0 and 2 (d = 3) share one level-1 edge, whose cut must stay below 2.
  const auto m3 = build_metric({{0, 1, 3}, {1, 0, 2}, {3, 2, 0}});
  std::vector<HstNode> nodes(7);
  nodes[1] = {0, 2, 2.0, std::nullopt, {}};
  nodes[2] = {1, 1, 1.0, std::nullopt, {}};
  nodes[3] = {2, 0, 0.5, 0, {}};
  nodes[4] = {2, 0, 0.5, 2, {}};
  nodes[5] = {0, 2, 2.0, std::nullopt, {}};
  nodes[6] = {5, 1, 1.0, 1, {}};
  const Hst bad(2, nodes);
  EXPECT_TRUE(has(validate_hst(bad, m3), "cut_diameter"));
}

TEST(ValidateHst, DetectsNonUniformChildrenAndMissingLeaves) {
  const auto m = build_metric({{0, 1}, {1, 0}});
  std::vector<HstNode> nodes(3);
  nodes[1] = {0, 1, 1.0, 0, {}};
  nodes[2] = {0, 2, 2.0, 1, {}};
  EXPECT_TRUE(has(validate_hst(Hst(2, nodes), m), "uniform_children"));
  std::vector<HstNode> leafless(2);
  leafless[1] = {0, 1, 1.0, std::nullopt, {}};
  EXPECT_TRUE(has(validate_hst(Hst(1, leafless), m), "leaves"));
}

TEST(CutsAtLevel, MinimalTree) {
  const auto t = two_leaf();
  auto c1 = cuts_at_level(t, 1);
  std::sort(c1.begin(), c1.end());
  EXPECT_EQ(c1, (std::vector<std::vector<PointId>>{{0}, {1}}));
  EXPECT_EQ(cuts_at_level(t, 0).size(), 2u);
  try {
    cuts_at_level(t, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LevelOutOfRange);
  }
  try {
    cuts_at_level(t, -1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LevelOutOfRange);
  }
}

TEST(CutsAtLevel, PartitionWithBoundedDiameter) {
  const auto m = gen_euclidean(20, 5);
  std::vector<PointId> all(20);
  for (PointId i = 0; i < 20; ++i) all[i] = i;
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto t = extend_singleton_levels(sample_frt(m, all, s), -2);
    for (int j = t.min_level(); j <= t.root_level(); ++j) {
      std::vector<PointId> seen;
      for (const auto& c : cuts_at_level(t, j)) {
        if (c.size() > 1) {
          EXPECT_LT(m.diameter(c), pow2(j));
        }
        if (j <= 0) {
          EXPECT_EQ(c.size(), 1u);
        }
        seen.insert(seen.end(), c.begin(), c.end());
      }
      std::sort(seen.begin(), seen.end());
      EXPECT_EQ(seen, all);
    }
  }
}

TEST(ExtendSingletonLevels, AddsQuarterAndEighthEdges) {
  const auto t = extend_singleton_levels(two_leaf(), -2);
  EXPECT_DOUBLE_EQ(t.total_length(), 2.75);
  EXPECT_EQ(t.min_level(), -2);
  EXPECT_EQ(cuts_at_level(t, -2).size(), 2u);
  EXPECT_EQ(cuts_at_level(t, -1).size(), 2u);
  EXPECT_TRUE(validate_hst(t, build_metric({{0, 1}, {1, 0}})).empty());
  try {
    extend_singleton_levels(t, -2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AlreadyExtended);
  }
}

TEST(ExtendSingletonLevels, OneLeafTreeGetsChain) {
  std::vector<HstNode> nodes(1);
  nodes[0].terminal = 4;
  const auto t = extend_singleton_levels(Hst(0, nodes), -2);
  EXPECT_EQ(t.size(), 3u);
  EXPECT_DOUBLE_EQ(t.total_length(), 0.375);
  EXPECT_EQ(t.terminals(), (std::vector<PointId>{4}));
}

TEST(ExtendSingletonLevels, IncreaseIsBoundedByLeafChains) {
  const auto m = gen_euclidean(12, 8);
  std::vector<PointId> all(12);
  for (PointId i = 0; i < 12; ++i) all[i] = i;
  const auto t = sample_frt(m, all, 4);
  const auto e1 = extend_singleton_levels(t, -1);
  const auto e2 = extend_singleton_levels(t, -2);
  EXPECT_DOUBLE_EQ(e1.total_length(), t.total_length() + 12 * 0.25);
  EXPECT_DOUBLE_EQ(e2.total_length(), t.total_length() + 12 * 0.375);
  EXPECT_EQ(e2.distance(0, 5), t.distance(0, 5) + 0.75);
}

TEST(TreeDistance, BasicCases) {
  const auto t = two_leaf();
  EXPECT_EQ(tree_distance(t, 0, 1), 2.0);
  EXPECT_EQ(tree_distance(t, 0, 0), 0.0);
  try {
    tree_distance(t, 0, 9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownLeaf);
  }
  // Siblings under a level-2 node: two edges of length 2 ... via level-2 leaf edges.
  std::vector<HstNode> nodes(3);
  nodes[1] = {0, 2, 2.0, 0, {}};
  nodes[2] = {0, 2, 2.0, 1, {}};
  EXPECT_EQ(tree_distance(Hst(2, nodes), 0, 1), 4.0);
}

TEST(TreeDistance, CutDecompositionMatchesPathLength) {
  // T(u,v) = sum over edges whose cut separates u and v; also checked by the
  // explicit separates() scan on small trees.
  Rng rng(77);
  for (int it = 0; it < 200; ++it) {
    const auto t = ond_test::random_tree(rng, 8, 4);
    const auto& ts = t.terminals();
    for (PointId u : ts)
      for (PointId v : ts) {
        double via_cuts = 0.0;
        for (std::size_t x = 1; x < t.size(); ++x) {
          const auto& c = t.cut(x);
          const bool iu = std::binary_search(c.begin(), c.end(), u);
          const bool iv = std::binary_search(c.begin(), c.end(), v);
          EXPECT_EQ(iu != iv, t.separates(x, u, v));
          if (iu != iv) via_cuts += t.nodes()[x].edge_len;
        }
        EXPECT_DOUBLE_EQ(via_cuts, t.distance(u, v));
        EXPECT_DOUBLE_EQ(ond_test::mask_length(t, ond_test::path_mask(t, u, v)), t.distance(u, v));
      }
  }
}

TEST(TreeDistance, FirstSeparationLevelReproducesDistance) {
  // In a levelled tree, u and v first separate at level j and the distance is
  // twice the path from a leaf up to level j.
  const auto m = gen_euclidean(16, 21);
  std::vector<PointId> all(16);
  for (PointId i = 0; i < 16; ++i) all[i] = i;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto t = sample_frt(m, all, s);
    for (PointId u = 0; u < 16; ++u)
      for (PointId v = u + 1; v < 16; ++v) {
        int first = 0;
        for (int j = t.root_level(); j >= 0; --j) {
          bool together = false;
          for (const auto& c : cuts_at_level(t, j))
            together = together || (std::binary_search(c.begin(), c.end(), u) &&
                                    std::binary_search(c.begin(), c.end(), v));
          if (!together) {
            first = j;
            break;
          }
        }
        double up = 0.0;
        for (int l = 1; l <= first; ++l) up += pow2(l - 1);
        EXPECT_DOUBLE_EQ(t.distance(u, v), 2.0 * up);
      }
  }
}

TEST(HstJson, RoundTrip) {
  const auto m = gen_euclidean(10, 2);
  std::vector<PointId> all(10);
  for (PointId i = 0; i < 10; ++i) all[i] = i;
  const auto t = extend_singleton_levels(sample_frt(m, all, 6), -2);
  const auto j = hst_to_json(t);
  EXPECT_TRUE(j.contains("levels"));
  EXPECT_TRUE(j.contains("leaf_map"));
  const auto back = hst_from_json(j);
  EXPECT_EQ(hst_to_json(back), j);
  EXPECT_TRUE(validate_hst(back, m).empty());
}
