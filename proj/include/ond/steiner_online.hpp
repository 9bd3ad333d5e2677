#pragma once

#include <bit>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ond/disjoint_sets.hpp"
#include "ond/hst.hpp"
#include "ond/run_result.hpp"

namespace ond {

// Greedy online Steiner tree: each terminal buys the edge to the nearest of
// the root and the earlier terminals.
inline RunResult run_greedy_st(const MetricSpace& m, const RequestSequence& seq,
                               const StepObserver& observer = {}) {
  require_problem(seq, Problem::SteinerTree);
  RunResult res;
  res.trace = {seq.problem, seq.root, seq.M, {}};
  std::vector<PointId> tree{*seq.root};
  for (std::size_t i = 0; i < seq.requests.size(); ++i) {
    const PointId p = seq.requests[i].s;
    const PointId z = tree[nearest_index(m, p, tree)];
    TraceRecord rec;
    rec.index = i;
    rec.point = p;
    rec.anchor = z;
    rec.a = m(p, z);
    rec.cls = distance_class(rec.a);
    rec.decision = rec.cls ? Decision::Buy : Decision::Free;
    if (rec.cls) rec.share = pow2(*rec.cls + 1);
    res.solution.buy(p, z);
    res.cost += rec.a;
    tree.push_back(p);
    res.trace.records.push_back(std::move(rec));
    notify(observer, i, res.solution);
  }
  return res;
}

// Online Steiner forest state. For a pair of class c, at each level
// j = 0..c both endpoints (s first) are joined to every earlier terminal of
// class >= j closer than 2^(j+1), skipping candidates already connected.
class OnlineForest {
 public:
  explicit OnlineForest(const MetricSpace& m) : m_(&m), comp_(m.size()) {}

  std::vector<LeveledEdge> serve(PointId s, PointId t) {
    std::vector<LeveledEdge> added;
    const auto cls = distance_class((*m_)(s, t));
    if (!cls) {
      if (comp_.unite(s, t)) added.push_back({s, t, std::nullopt});
      return added;
    }
    terminals_.push_back({s, *cls});
    terminals_.push_back({t, *cls});
    for (int j = 0; j <= *cls; ++j) {
      const double reach = pow2(j + 1);
      for (PointId x : {s, t})
        for (const auto& [v, cv] : terminals_)
          if (cv >= j && (*m_)(x, v) < reach && comp_.unite(x, v)) added.push_back({x, v, j});
    }
    return added;
  }

 private:
  struct Terminal {
    PointId point;
    int cls;
  };
  const MetricSpace* m_;
  DisjointSets comp_;
  std::vector<Terminal> terminals_;
};

inline RunResult run_bc_sf(const MetricSpace& m, const RequestSequence& seq,
                           const StepObserver& observer = {}) {
  require_problem(seq, Problem::SteinerForest);
  RunResult res;
  res.trace = {seq.problem, seq.root, seq.M, {}};
  OnlineForest forest(m);
  for (std::size_t i = 0; i < seq.requests.size(); ++i) {
    const auto& r = seq.requests[i];
    TraceRecord rec;
    rec.index = i;
    rec.point = r.s;
    rec.mate = r.t;
    rec.a = m(r.s, r.t);
    rec.cls = distance_class(rec.a);
    rec.decision = rec.cls ? Decision::Buy : Decision::Free;
    rec.edges = forest.serve(r.s, r.t);
    for (const auto& e : rec.edges) {
      res.solution.buy(e.u, e.v);
      res.cost += m(e.u, e.v);
    }
    res.trace.records.push_back(std::move(rec));
    notify(observer, i, res.solution);
  }
  return res;
}

// Requirement R is served by an independent forest instance for
// floor(log2 R); every edge that instance buys is bought 2^(level+1) times.
inline RunResult run_sn(const MetricSpace& m, const RequestSequence& seq,
                        const StepObserver& observer = {}) {
  require_problem(seq, Problem::SteinerNetwork);
  RunResult res;
  res.trace = {seq.problem, seq.root, seq.M, {}};
  std::map<int, OnlineForest> instances;
  for (std::size_t i = 0; i < seq.requests.size(); ++i) {
    const auto& r = seq.requests[i];
    if (r.requirement < 1) throw Error(ErrorCode::InvalidRequirement, "requirement must be >= 1");
    const int level = std::bit_width(static_cast<unsigned>(r.requirement)) - 1;
    auto it = instances.try_emplace(level, m).first;
    TraceRecord rec;
    rec.index = i;
    rec.point = r.s;
    rec.mate = r.t;
    rec.a = m(r.s, r.t);
    rec.cls = distance_class(rec.a);
    rec.decision = rec.cls ? Decision::Buy : Decision::Free;
    rec.instance = level;
    rec.edges = it->second.serve(r.s, r.t);
    const std::int64_t copies = std::int64_t{2} << level;
    for (const auto& e : rec.edges) {
      res.solution.buy(e.u, e.v, copies);
      res.cost += static_cast<double>(copies) * m(e.u, e.v);
    }
    res.trace.records.push_back(std::move(rec));
    notify(observer, i, res.solution);
  }
  return res;
}

// Buy-tagged records of one class must be pairwise at least 2^class apart.
inline std::vector<Violation> check_class_separation(const RunTrace& trace, const MetricSpace& m) {
  std::map<int, std::vector<const TraceRecord*>> by_class;
  for (const auto& r : trace.records)
    if (r.decision == Decision::Buy && r.cls) by_class[*r.cls].push_back(&r);
  std::vector<Violation> out;
  for (const auto& [j, rs] : by_class)
    for (std::size_t a = 0; a < rs.size(); ++a)
      for (std::size_t b = a + 1; b < rs.size(); ++b)
        if (m(rs[a]->point, rs[b]->point) < pow2(j))
          out.push_back({"class_separation", "requests " + std::to_string(rs[a]->index) + " and " +
                                                 std::to_string(rs[b]->index) + " in class " +
                                                 std::to_string(j) + " are too close"});
  return out;
}

// Records whose pairs were handed to a forest instance (optionally one
// Steiner network level only).
inline std::vector<TraceRecord> forest_records(const RunTrace& trace,
                                               std::optional<int> instance = std::nullopt) {
  std::vector<TraceRecord> out;
  for (const auto& r : trace.records) {
    if (!r.mate || r.decision != Decision::Buy) continue;
    if (instance && r.instance != instance) continue;
    out.push_back(r);
  }
  return out;
}

// Points of forest terminals with class >= j.
inline std::set<PointId> forest_terminals_from(const std::vector<TraceRecord>& records, int j) {
  std::set<PointId> x;
  for (const auto& r : records)
    if (r.cls && *r.cls >= j) {
      x.insert(r.point);
      x.insert(*r.mate);
    }
  return x;
}

// Level-j cuts of t meeting the class->=j forest terminals.
inline std::vector<std::vector<PointId>> cover_from_hst(const Hst& t,
                                                        const std::vector<TraceRecord>& records, int j) {
  const auto x = forest_terminals_from(records, j);
  std::vector<std::vector<PointId>> out;
  for (auto& c : cuts_at_level(t, j))
    if (std::any_of(c.begin(), c.end(), [&](PointId p) { return x.count(p) > 0; })) out.push_back(std::move(c));
  return out;
}

// For every level with a cover, contracts each cover set to a node and
// checks that the level-j forest edges form no cycle.
inline std::vector<Violation> check_metagraph_acyclic(
    const std::vector<TraceRecord>& records, const MetricSpace& m,
    const std::map<int, std::vector<std::vector<PointId>>>& covers) {
  std::vector<Violation> out;
  for (const auto& [j, sets] : covers) {
    std::map<PointId, std::size_t> owner;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      if (sets[s].size() > 1 && !(m.diameter(sets[s]) < pow2(j)))
        throw Error(ErrorCode::InvalidCover, "cover set too wide at level " + std::to_string(j));
      for (PointId p : sets[s])
        if (!owner.emplace(p, s).second)
          throw Error(ErrorCode::InvalidCover, "cover sets overlap at level " + std::to_string(j));
    }
    for (PointId p : forest_terminals_from(records, j))
      if (!owner.count(p))
        throw Error(ErrorCode::InvalidCover, "point " + std::to_string(p) + " uncovered at level " +
                                                 std::to_string(j));
    DisjointSets meta(sets.size());
    for (const auto& r : records)
      for (const auto& e : r.edges) {
        if (e.level != j) continue;
        auto a = owner.find(e.u), b = owner.find(e.v);
        if (a == owner.end() || b == owner.end())
          throw Error(ErrorCode::InvalidCover, "edge endpoint uncovered at level " + std::to_string(j));
        if (!meta.unite(a->second, b->second))
          out.push_back({"metagraph_acyclic", "level " + std::to_string(j) + " edge (" +
                                                  std::to_string(e.u) + "," + std::to_string(e.v) +
                                                  ") of request " + std::to_string(r.index) +
                                                  " closes a cycle"});
      }
  }
  return out;
}

// Every level-j forest edge is shorter than 2^(j+1) and joins terminals of
// class >= j that have already arrived.
inline std::vector<Violation> check_forest_edges(const std::vector<TraceRecord>& records,
                                                 const MetricSpace& m) {
  std::vector<Violation> out;
  std::map<PointId, int> best_class;
  for (const auto& r : records) {
    if (r.cls)
      for (PointId p : {r.point, *r.mate}) {
        auto [it, fresh] = best_class.emplace(p, *r.cls);
        if (!fresh) it->second = std::max(it->second, *r.cls);
      }
    for (const auto& e : r.edges) {
      if (!e.level) {
        if (m(e.u, e.v) != 0.0) out.push_back({"forest_edges", "unlevelled edge of positive length"});
        continue;
      }
      const int j = *e.level;
      auto cu = best_class.find(e.u), cv = best_class.find(e.v);
      if (!(m(e.u, e.v) < pow2(j + 1)) || cu == best_class.end() || cv == best_class.end() ||
          cu->second < j || cv->second < j)
        out.push_back({"forest_edges", "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                           ") breaks the level-" + std::to_string(j) + " guard"});
    }
  }
  return out;
}

// Bought multiplicities equal the per-level copy counts summed over levels.
inline std::vector<Violation> check_sn_multiplicity(const RunTrace& trace, const MultiGraphSolution& sol) {
  std::map<EdgeKey, std::int64_t> expect;
  for (const auto& r : trace.records)
    for (const auto& e : r.edges)
      if (e.u != e.v) expect[edge_key(e.u, e.v)] += std::int64_t{2} << r.instance.value_or(0);
  if (expect != sol.bought()) return {{"sn_multiplicity", "bought copies differ from per-level counts"}};
  return {};
}

}  // namespace ond
