#include <gtest/gtest.h>

#include "support.hpp"

using namespace ond;
using ond_test::line;

namespace {

RequestSequence pcst(PointId root, const std::vector<std::pair<PointId, double>>& ts) {
  RequestSequence seq;
  seq.problem = Problem::PCST;
  seq.root = root;
  for (auto [p, pi] : ts) seq.requests.push_back({p, 0, 1, pi});
  return seq;
}

bool has_check(const std::vector<Violation>& v, const std::string& name) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.check == name; });
}

}  // namespace

TEST(PrizeCollecting, PenaltyThenPooledBuy) {
  const auto m = line({0, 1, 4, 4});
  const auto seq = pcst(0, {{2, 1.0}, {3, 10.0}});
  const auto res = run_pcst(m, seq);
  const auto& r = res.trace.records;
  EXPECT_EQ(*r[0].cls, 2);
  EXPECT_EQ(r[0].decision, Decision::Penalty);
  EXPECT_EQ(r[0].share, 1.0);
  EXPECT_EQ(r[1].decision, Decision::Buy);
  EXPECT_EQ(r[1].share, 7.0);
  EXPECT_EQ(r[1].witnesses, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(res.cost, 5.0);
  EXPECT_EQ(solution_cost(res.solution, seq, m).total, 5.0);
  EXPECT_EQ(total_rho(res.trace), 8.0);
  const auto t = extend_singleton_levels(sample_frt(m, seq.terminal_points(), 3), -2);
  EXPECT_TRUE(check_pcst_invariants(res.trace, seq, m, t).violations.empty());
}

TEST(PrizeCollecting, ZeroPenaltyPaysPenalty) {
  const auto m = line({0, 1, 4});
  const auto seq = pcst(0, {{2, 0.0}, {2, 0.0}});
  const auto res = run_pcst(m, seq);
  EXPECT_EQ(res.cost, 0.0);
  EXPECT_EQ(total_rho(res.trace), 0.0);
  for (const auto& r : res.trace.records) EXPECT_EQ(r.decision, Decision::Penalty);
  EXPECT_TRUE(ond_test::all_true(check_feasible(res.solution, seq, m)));
}

TEST(PrizeCollecting, ForgedShareAbovePenaltyFlagged) {
  const auto m = line({0, 1, 4, 4});
  const auto seq = pcst(0, {{2, 1.0}, {3, 10.0}});
  auto res = run_pcst(m, seq);
  res.trace.records[0].share = 5.0;
  const auto t = extend_singleton_levels(sample_frt(m, seq.terminal_points(), 3), -2);
  EXPECT_TRUE(has_check(check_pcst_invariants(res.trace, seq, m, t).violations, "pcst_rho_le_penalty"));
}

TEST(PrizeCollecting, ForgedCostAboveShareFlagged) {
  const auto m = line({0, 1, 4, 4});
  const auto seq = pcst(0, {{2, 1.0}, {3, 10.0}});
  auto res = run_pcst(m, seq);
  for (auto& r : res.trace.records) r.share = 0.0;
  const auto t = extend_singleton_levels(sample_frt(m, seq.terminal_points(), 3), -2);
  EXPECT_TRUE(has_check(check_pcst_invariants(res.trace, seq, m, t).violations, "pcst_cost_vs_share"));
}

TEST(PrizeCollecting, RandomRunsHoldAllBounds) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto m = s % 2 ? gen_euclidean(6 + s % 10, s) : gen_graph_metric(6 + s % 10, 0.4, s);
    const auto seq = gen_requests(Problem::PCST, m, 5 + s, s + 3, {});
    const auto res = run_pcst(m, seq);
    EXPECT_TRUE(ond_test::all_true(check_feasible(res.solution, seq, m)));
    RequestSequence st;
    st.problem = Problem::SteinerTree;
    st.root = seq.root;
    for (const auto& r : res.trace.records)
      if (r.decision == Decision::Buy || r.decision == Decision::Free) st.requests.push_back(seq.requests[r.index]);
    EXPECT_EQ(run_greedy_st(m, st).solution.bought(), res.solution.bought());

    std::vector<Penalized> pen;
    for (const auto& r : seq.requests) pen.push_back({r.s, r.penalty});
    const double rho = total_rho(res.trace);
    for (std::uint64_t k = 0; k < 10; ++k) {
      const auto t = extend_singleton_levels(sample_frt(m, seq.terminal_points(), k), -2);
      const auto check = check_pcst_invariants(res.trace, seq, m, t);
      EXPECT_TRUE(check.violations.empty()) << "seed " << s << " tree " << k;
      const double lb = pcst_cut_bound(res.trace, seq, t);
      const double opt = opt_tree_pcst(t, *seq.root, pen);
      EXPECT_LE(rho, 8.0 * lb * (1 + 1e-9));
      EXPECT_LE(rho, 8.0 * opt * (1 + 1e-9));
      EXPECT_LE(res.cost, 16.0 * opt * (1 + 1e-9));
    }
  }
}
