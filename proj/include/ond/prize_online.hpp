#pragma once

#include <map>
#include <string>
#include <vector>

#include "ond/hst.hpp"
#include "ond/run_result.hpp"

namespace ond {

// Online prize-collecting Steiner tree. Class-j terminals within 2^(j-1)
// of each other pool cost shares rho; a terminal raises its own share up to
// its penalty and buys the edge to the nearest bought terminal once the pool
// reaches 2^(j+1), paying its penalty otherwise.
inline RunResult run_pcst(const MetricSpace& m, const RequestSequence& seq, const StepObserver& observer = {}) {
  require_problem(seq, Problem::PCST);
  RunResult res;
  res.trace = {seq.problem, seq.root, seq.M, {}};
  std::vector<PointId> bought{*seq.root};
  std::map<int, std::vector<std::size_t>> members;  // X_j
  std::vector<double> rho(seq.requests.size(), 0.0);
  for (std::size_t i = 0; i < seq.requests.size(); ++i) {
    const PointId p = seq.requests[i].s;
    const double penalty = seq.requests[i].penalty;
    const PointId z = bought[nearest_index(m, p, bought)];
    TraceRecord rec;
    rec.index = i;
    rec.point = p;
    rec.anchor = z;
    rec.a = m(p, z);
    rec.cls = distance_class(rec.a);
    if (!rec.cls) {
      rec.decision = Decision::Free;
      res.solution.buy(p, z);
      bought.push_back(p);
    } else {
      const int j = *rec.cls;
      const double target = pow2(j + 1);
      double pooled = 0.0;
      for (std::size_t w : members[j])
        if (m(p, seq.requests[w].s) < pow2(j - 1)) {
          rec.witnesses.push_back(w);
          pooled += rho[w];
        }
      rec.witnesses.push_back(i);
      members[j].push_back(i);
      const double deficit = std::max(0.0, target - pooled);
      rho[i] = std::min(penalty, deficit);
      rec.share = rho[i];
      // Compare against the deficit directly so the decision does not hinge
      // on rounding in pooled + rho.
      if (pooled >= target || penalty >= deficit) {
        rec.decision = Decision::Buy;
        res.solution.buy(p, z);
        res.cost += rec.a;
        bought.push_back(p);
      } else {
        rec.decision = Decision::Penalty;
        res.solution.pay_penalty(i);
        res.cost += penalty;
      }
    }
    res.trace.records.push_back(std::move(rec));
    notify(observer, i, res.solution);
  }
  return res;
}

inline double total_rho(const RunTrace& trace) {
  double s = 0.0;
  for (const auto& r : trace.records) s += r.share;
  return s;
}

// Cut-decomposition lower bound on an extended tree: every level-j cut C
// avoiding the root contributes min(penalty of class-(j+1) terminals with
// positive share in C, 2^(j-1)).
inline double pcst_cut_bound(const RunTrace& trace, const RequestSequence& seq, const Hst& t) {
  double total = 0.0;
  for (int j = t.min_level(); j <= t.root_level(); ++j) {
    for (const auto& c : cuts_at_level(t, j)) {
      if (trace.root && std::binary_search(c.begin(), c.end(), *trace.root)) continue;
      double pen = 0.0;
      for (const auto& r : trace.records)
        if (r.cls == j + 1 && r.share > 0.0 && std::binary_search(c.begin(), c.end(), r.point))
          pen += seq.requests.at(r.index).penalty;
      total += std::min(pen, pow2(j - 1));
    }
  }
  return total;
}

struct PcstCheck {
  std::vector<Violation> violations;
  // Cuts whose pooled share lies in (2^(j+1), 2^(j+2)]; allowed but notable.
  std::vector<std::string> flagged;
};

inline PcstCheck check_pcst_invariants(const RunTrace& trace, const RequestSequence& seq, const MetricSpace& m,
                                       const Hst& t) {
  PcstCheck out;
  auto leq = [](double lhs, double rhs) { return lhs <= rhs + 1e-9 * std::max({1.0, lhs, rhs}); };

  double total = 0.0, rho_sum = 0.0;
  for (const auto& r : trace.records) {
    const double penalty = seq.requests.at(r.index).penalty;
    rho_sum += r.share;
    if (r.decision == Decision::Buy) total += r.a;
    if (r.decision == Decision::Penalty) total += penalty;
    if (r.share < 0.0 || r.share > penalty)
      out.violations.push_back({"pcst_rho_le_penalty", "request " + std::to_string(r.index) +
                                                           " has share above its penalty"});
  }
  if (!leq(total, 2.0 * rho_sum))
    out.violations.push_back({"pcst_cost_vs_share", "cost exceeds twice the shares"});

  std::map<int, std::vector<const TraceRecord*>> buyers;
  for (const auto& r : trace.records)
    if (r.decision == Decision::Buy && r.cls) buyers[*r.cls].push_back(&r);
  for (const auto& [j, list] : buyers)
    for (std::size_t a = 0; a < list.size(); ++a)
      for (std::size_t b = a + 1; b < list.size(); ++b)
        if (m(list[a]->point, list[b]->point) < pow2(j))
          out.violations.push_back({"class_separation", "requests " + std::to_string(list[a]->index) + " and " +
                                                            std::to_string(list[b]->index) + " too close"});

  for (int j = t.min_level(); j <= t.root_level(); ++j) {
    for (const auto& c : cuts_at_level(t, j)) {
      double pooled = 0.0;
      for (const auto& r : trace.records)
        if (r.cls == j + 1 && r.share > 0.0 && std::binary_search(c.begin(), c.end(), r.point)) pooled += r.share;
      if (pooled == 0.0) continue;
      const bool holds_root = trace.root && std::binary_search(c.begin(), c.end(), *trace.root);
      const std::string where = "level-" + std::to_string(j) + " cut of " + std::to_string(c.size()) + " points";
      if (holds_root) {
        out.violations.push_back({"pcst_cut_share", "positive share in the root's " + where});
      } else if (!leq(pooled, pow2(j + 2))) {
        out.violations.push_back({"pcst_cut_share", "share above 2^(j+2) in " + where});
      } else if (pooled > pow2(j + 1)) {
        out.flagged.push_back("share in (2^(j+1), 2^(j+2)] in " + where);
      }
    }
  }
  return out;
}

}  // namespace ond
