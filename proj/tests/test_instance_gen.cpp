#include <gtest/gtest.h>

#include <optional>
#include <set>

#include "support.hpp"

using namespace ond;

TEST(GenEuclidean, SmallCasesAndDeterminism) {
  EXPECT_EQ(gen_euclidean(1, 4).size(), 1u);
  const auto two = gen_euclidean(2, 4);
  EXPECT_EQ(two(0, 1), 1.0);
  EXPECT_EQ(gen_euclidean(20, 99).data(), gen_euclidean(20, 99).data());
  EXPECT_NE(gen_euclidean(20, 99).data(), gen_euclidean(20, 100).data());
  const auto three_d = gen_euclidean(5, 1, 3);
  EXPECT_EQ(three_d.size(), 5u);
}

TEST(GenGraphMetric, TreeOnlyGraphIsTreeMetric) {
  // Four-point condition: the two largest of the three pair sums agree.
  const auto m = gen_graph_metric(9, 0.0, 17);
  for (PointId a = 0; a < 9; ++a)
    for (PointId b = a + 1; b < 9; ++b)
      for (PointId c = b + 1; c < 9; ++c)
        for (PointId d = c + 1; d < 9; ++d) {
          std::vector<double> s{m(a, b) + m(c, d), m(a, c) + m(b, d), m(a, d) + m(b, c)};
          std::sort(s.begin(), s.end());
          EXPECT_NEAR(s[1], s[2], 1e-9);
        }
}

TEST(GenGraphMetric, ValidAndDeterministic) {
  for (double density : {0.0, 0.3, 1.0}) {
    const auto raw = gen_graph_matrix(12, density, 5);
    EXPECT_NO_THROW(build_metric(raw));
    EXPECT_EQ(raw, gen_graph_matrix(12, density, 5));
  }
  // Complete graph: every distance is at most the largest weight.
  const auto full = gen_graph_matrix(10, 1.0, 8);
  for (const auto& row : full)
    for (double x : row) EXPECT_LE(x, 10.0);
}

TEST(GenDiamond, SmallDepths) {
  const auto d0 = gen_diamond_lb(0);
  const double c0 = run_greedy_st(d0.metric, d0.requests).cost;
  EXPECT_DOUBLE_EQ(c0 / d0.opt, 1.0);
  const auto d1 = gen_diamond_lb(1);
  EXPECT_EQ(d1.metric.size(), 4u);
  EXPECT_DOUBLE_EQ(run_greedy_st(d1.metric, d1.requests).cost / d1.opt, 1.5);
}

TEST(GenDiamond, OptimumMatchesExactSteinerTree) {
  for (int depth = 0; depth <= 3; ++depth) {
    const auto d = gen_diamond_lb(depth);
    auto ts = d.requests.terminal_points();
    EXPECT_NEAR(dreyfus_wagner_st(d.metric, ts), d.opt, 1e-9) << "depth " << depth;
  }
}

TEST(GenDiamond, RatioStrictlyIncreasesWithDepth) {
  double prev = 0.0;
  for (int depth = 0; depth <= kMaxDiamondDepth; ++depth) {
    const auto d = gen_diamond_lb(depth);
    const double ratio = run_greedy_st(d.metric, d.requests).cost / d.opt;
    EXPECT_DOUBLE_EQ(ratio, 1.0 + depth / 2.0);
    EXPECT_GT(ratio, prev);
    prev = ratio;
    EXPECT_EQ(d.requests.requests.size(), static_cast<std::size_t>(pow2(depth)));
  }
}

TEST(GenDiamond, DepthLimits) {
  for (int bad : {-1, kMaxDiamondDepth + 1}) {
    try {
      gen_diamond_lb(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DepthTooLarge);
    }
  }
}

TEST(GenRequests, ShapesAndRanges) {
  const auto m = gen_euclidean(15, 2);
  EXPECT_TRUE(gen_requests(Problem::SteinerTree, m, 0, 1).requests.empty());
  GenParams one;
  for (const auto& r : gen_requests(Problem::SteinerNetwork, m, 50, 3, one).requests) EXPECT_EQ(r.requirement, 1);
  GenParams gp;
  gp.r_max = 7;
  gp.facilities = 4;
  std::set<int> seen;
  for (Problem p : kAllProblems) {
    const auto seq = gen_requests(p, m, 200, 11, gp);
    EXPECT_NO_THROW(seq.validate(m.size()));
    const auto again = gen_requests(p, m, 200, 11, gp);
    EXPECT_EQ(requests_to_json(seq), requests_to_json(again));
    for (const auto& r : seq.requests) {
      if (is_rooted(p)) {
        EXPECT_NE(r.s, *seq.root);
      }
      if (is_pair_problem(p)) {
        EXPECT_NE(r.s, r.t);
      }
      if (p == Problem::SteinerNetwork) {
        EXPECT_GE(r.requirement, 1);
        EXPECT_LE(r.requirement, 7);
        seen.insert(r.requirement);
      }
      if (p == Problem::PCST) {
        EXPECT_GE(r.penalty, 0.0);
        EXPECT_LE(r.penalty, 2.0 * m.diameter());
      }
    }
    if (p == Problem::CFL) {
      EXPECT_EQ(seq.facilities.size(), 5u);
      EXPECT_EQ(seq.facilities[0].point, *seq.root);
      EXPECT_EQ(seq.facilities[0].cost, 0.0);
    }
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(InstanceIo, RoundTripAllProblems) {
  const auto pts = gen_euclidean_points(8, 4);
  const auto m = build_metric_from_points(pts);
  GenParams gp;
  gp.r_max = 3;
  gp.facilities = 2;
  for (Problem p : kAllProblems) {
    const auto seq = gen_requests(p, m, 6, 5, gp);
    const auto j = instance_to_json(pts, std::nullopt, seq);
    const auto inst = parse_instance(j);
    EXPECT_EQ(inst.metric.data(), m.data());
    EXPECT_EQ(instance_to_json(pts, std::nullopt, inst.requests), j);
  }
}

TEST(InstanceIo, SchemaErrors) {
  auto code = [](const std::string& text) -> std::optional<ErrorCode> {
    try {
      parse_instance(nlohmann::json::parse(text));
    } catch (const Error& e) {
      return e.code();
    }
    return std::nullopt;
  };
  EXPECT_EQ(code(R"({"matrix": [[0,1],[1,0]], "problem": "SteinerTree", "root": 0, "requests": [1], "extra": 1})"),
            ErrorCode::InvalidInput);
  EXPECT_EQ(code(R"({"problem": "SteinerTree", "root": 0, "requests": [1]})"), ErrorCode::InvalidInput);
  EXPECT_EQ(code(R"({"matrix": [[0,1],[1,0]], "problem": "Nope", "requests": []})"), ErrorCode::InvalidInput);
  EXPECT_EQ(code(R"({"matrix": [[0,1],[1,0]], "problem": "SteinerForest", "requests": [[0]]})"),
            ErrorCode::InvalidInput);
  EXPECT_EQ(code(R"({"matrix": [[0,1],[1,0]], "problem": "SteinerTree", "root": 0, "requests": [5]})"),
            ErrorCode::InvalidInput);
  EXPECT_EQ(code(R"({"matrix": [[0,1],[2,0]], "problem": "SteinerTree", "root": 0, "requests": [1]})"),
            ErrorCode::AsymmetricInput);
  EXPECT_EQ(code(R"({"matrix": [[0,1],[1,0]], "problem": "SteinerTree", "root": 0, "requests": [1]})"),
            std::nullopt);
  EXPECT_EQ(code(R"({"matrix": [[0,1],[1,0]], "problem": "SteinerNetwork", "requests": [[0, 1, 2]]})"),
            std::nullopt);
  EXPECT_EQ(code(R"({"points": [[0],[1]], "problem": "PCST", "root": 0, "requests": [[1, 2.5]]})"),
            std::nullopt);
}
