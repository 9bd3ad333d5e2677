#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ond/hst.hpp"
#include "ond/run_result.hpp"
#include "ond/steiner_online.hpp"

namespace ond {

// Single-source rent-or-buy. A terminal at class-j distance a from the
// nearest bought terminal buys that edge once at least M earlier class-j
// rent terminals lie within 2^(j-1) of it, and rents it otherwise.
inline RunResult run_srob(const MetricSpace& m, const RequestSequence& seq,
                          const StepObserver& observer = {}) {
  require_problem(seq, Problem::SROB);
  RunResult res;
  res.trace = {seq.problem, seq.root, seq.M, {}};
  std::vector<PointId> bought{*seq.root};
  std::map<int, std::vector<std::size_t>> renters;
  for (std::size_t i = 0; i < seq.requests.size(); ++i) {
    const PointId p = seq.requests[i].s;
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
      for (std::size_t w : renters[j])
        if (m(p, seq.requests[w].s) < pow2(j - 1)) rec.witnesses.push_back(w);
      if (static_cast<double>(rec.witnesses.size()) >= seq.M) {
        rec.decision = Decision::Buy;
        res.solution.buy(p, z);
        res.cost += seq.M * rec.a;
        bought.push_back(p);
      } else {
        rec.decision = Decision::Rent;
        rec.rent_terminal = p;
        rec.share = pow2(j + 1);
        res.solution.rent(i, p, z);
        res.cost += rec.a;
        renters[j].push_back(i);
      }
    }
    res.trace.records.push_back(std::move(rec));
    notify(observer, i, res.solution);
  }
  return res;
}

// Multi-source rent-or-buy. A class-j pair rents unless both endpoints see
// at least M class-j rent terminals within 2^(j-2); then it is handed to an
// online forest whose edges are bought.
inline RunResult run_mrob(const MetricSpace& m, const RequestSequence& seq,
                          const StepObserver& observer = {}) {
  require_problem(seq, Problem::MROB);
  RunResult res;
  res.trace = {seq.problem, seq.root, seq.M, {}};
  struct Renter {
    std::size_t index;
    PointId point;
  };
  std::map<int, std::vector<Renter>> renters;
  OnlineForest forest(m);
  for (std::size_t i = 0; i < seq.requests.size(); ++i) {
    const auto& r = seq.requests[i];
    TraceRecord rec;
    rec.index = i;
    rec.point = r.s;
    rec.mate = r.t;
    rec.a = m(r.s, r.t);
    rec.cls = distance_class(rec.a);
    if (!rec.cls) {
      rec.decision = Decision::Free;
      res.solution.rent(i, r.s, r.t);
    } else {
      const int j = *rec.cls;
      for (const auto& w : renters[j]) {
        if (m(r.s, w.point) < pow2(j - 2)) rec.witnesses.push_back(w.index);
        if (m(r.t, w.point) < pow2(j - 2)) rec.mate_witnesses.push_back(w.index);
      }
      std::optional<PointId> renter;
      if (static_cast<double>(rec.witnesses.size()) < seq.M) renter = r.s;
      else if (static_cast<double>(rec.mate_witnesses.size()) < seq.M) renter = r.t;
      if (renter) {
        rec.decision = Decision::Rent;
        rec.rent_terminal = renter;
        rec.share = pow2(j + 1);
        res.solution.rent(i, r.s, r.t);
        res.cost += rec.a;
        renters[j].push_back({i, *renter});
      } else {
        rec.decision = Decision::Buy;
        rec.edges = forest.serve(r.s, r.t);
        for (const auto& e : rec.edges) {
          res.solution.buy(e.u, e.v);
          res.cost += seq.M * m(e.u, e.v);
        }
      }
    }
    res.trace.records.push_back(std::move(rec));
    notify(observer, i, res.solution);
  }
  return res;
}

// Sum of rent-terminal cost shares 2^(j+1).
inline double rent_share(const RunTrace& trace) {
  double s = 0.0;
  for (const auto& r : trace.records)
    if (r.decision == Decision::Rent) s += r.share;
  return s;
}

namespace detail {

inline std::map<std::size_t, const TraceRecord*> by_index(const RunTrace& trace) {
  std::map<std::size_t, const TraceRecord*> out;
  for (const auto& r : trace.records) out[r.index] = &r;
  return out;
}

inline std::string req(std::size_t i) { return "request " + std::to_string(i); }

}  // namespace detail

// Witness sets behind buy decisions: large enough, drawn from earlier
// same-class rent terminals inside the witness radius, and disjoint across
// well-separated buyers of one class.
inline std::vector<Violation> check_witness_disjointness(const RunTrace& trace, const MetricSpace& m) {
  std::vector<Violation> out;
  const auto index = detail::by_index(trace);
  const bool multi = trace.problem == Problem::MROB;
  const int radius_shift = multi ? 2 : 1;

  struct Buyer {
    std::size_t index;
    PointId point;
    const std::vector<std::size_t>* witnesses;
  };
  std::map<int, std::vector<Buyer>> buyers;

  for (const auto& r : trace.records) {
    if (r.decision != Decision::Buy || !r.cls) continue;
    const int j = *r.cls;
    std::vector<Buyer> mine{{r.index, r.point, &r.witnesses}};
    if (multi && r.mate) mine.push_back({r.index, *r.mate, &r.mate_witnesses});
    for (const auto& b : mine) {
      if (static_cast<double>(b.witnesses->size()) < trace.M)
        out.push_back({"witness_disjointness", detail::req(b.index) + " bought with too few witnesses"});
      for (std::size_t w : *b.witnesses) {
        auto it = index.find(w);
        const TraceRecord* wr = it == index.end() ? nullptr : it->second;
        if (!wr || w >= b.index || wr->decision != Decision::Rent || wr->cls != j || !wr->rent_terminal ||
            !(m(b.point, *wr->rent_terminal) < pow2(j - radius_shift)))
          out.push_back({"witness_disjointness", detail::req(b.index) + " lists invalid witness " +
                                                     std::to_string(w)});
      }
      buyers[j].push_back(b);
    }
  }

  for (auto& [j, list] : buyers) {
    std::vector<Buyer> chosen;
    if (multi) {
      // Greedy maximal 2^(j-1)-separated subset in arrival order.
      for (const auto& b : list)
        if (std::all_of(chosen.begin(), chosen.end(),
                        [&](const Buyer& c) { return m(b.point, c.point) >= pow2(j - 1); }))
          chosen.push_back(b);
    } else {
      chosen = list;
      for (std::size_t a = 0; a < list.size(); ++a)
        for (std::size_t b = a + 1; b < list.size(); ++b)
          if (m(list[a].point, list[b].point) < pow2(j))
            out.push_back({"witness_disjointness", detail::req(list[a].index) + " and " +
                                                       detail::req(list[b].index) + " are closer than 2^" +
                                                       std::to_string(j)});
    }
    std::map<std::size_t, std::size_t> owner;
    for (const auto& b : chosen)
      for (std::size_t w : *b.witnesses) {
        auto [it, fresh] = owner.emplace(w, b.index);
        if (!fresh && it->second != b.index)
          out.push_back({"witness_disjointness", "witness " + std::to_string(w) + " shared by " +
                                                     detail::req(it->second) + " and " + detail::req(b.index)});
      }
  }
  return out;
}

// Rent terminals of class j + offset that fall into one level-j cut of the
// extended tree: none when the cut holds the root, otherwise at most
// min(ceil(M), demand through the cut).
inline std::vector<Violation> check_cut_capacity(const RunTrace& trace, const Hst& t) {
  std::vector<Violation> out;
  const bool multi = trace.problem == Problem::MROB;
  const int offset = multi ? 2 : 1;
  const double cap = std::ceil(trace.M);
  for (int j = t.min_level(); j <= t.root_level(); ++j) {
    const auto cuts = cuts_at_level(t, j);
    std::map<PointId, std::size_t> cut_of;
    for (std::size_t c = 0; c < cuts.size(); ++c)
      for (PointId p : cuts[c]) cut_of[p] = c;
    std::vector<std::size_t> renters(cuts.size(), 0), demand(cuts.size(), 0);
    for (const auto& r : trace.records) {
      const std::size_t cs = cut_of.at(r.point);
      if (multi) {
        const std::size_t ct = cut_of.at(*r.mate);
        if (cs != ct) {
          ++demand[cs];
          ++demand[ct];
        }
      } else {
        ++demand[cs];
      }
      if (r.decision == Decision::Rent && r.cls == j + offset) ++renters[cut_of.at(*r.rent_terminal)];
    }
    std::optional<std::size_t> root_cut;
    if (!multi && trace.root) root_cut = cut_of.at(*trace.root);
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      if (renters[c] == 0) continue;
      const double limit = root_cut == c ? 0.0 : std::min(cap, static_cast<double>(demand[c]));
      if (static_cast<double>(renters[c]) > limit)
        out.push_back({"cut_capacity", std::to_string(renters[c]) + " class-" + std::to_string(j + offset) +
                                           " rent terminals in one level-" + std::to_string(j) +
                                           " cut (limit " + std::to_string(static_cast<long long>(limit)) +
                                           ")"});
    }
  }
  return out;
}

}  // namespace ond
