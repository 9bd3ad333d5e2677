#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ond/disjoint_sets.hpp"
#include "ond/max_flow.hpp"
#include "ond/metric.hpp"
#include "ond/problem.hpp"

namespace ond {

using EdgeKey = std::pair<PointId, PointId>;

inline EdgeKey edge_key(PointId u, PointId v) { return u < v ? EdgeKey{u, v} : EdgeKey{v, u}; }

// Bought multigraph H plus per-request rents, penalties, facilities and
// assignments. Everything only grows.
class MultiGraphSolution {
 public:
  void buy(PointId u, PointId v, std::int64_t copies = 1) {
    if (u == v || copies <= 0) return;
    bought_[edge_key(u, v)] += copies;
  }

  void rent(std::size_t request, PointId u, PointId v) {
    grow(request);
    if (u != v) rented_[request].push_back(edge_key(u, v));
  }

  void pay_penalty(std::size_t request) {
    grow(request);
    penalties_.insert(request);
  }

  void open(PointId facility) { opened_.insert(facility); }

  void assign(std::size_t request, PointId facility) {
    grow(request);
    assignment_[request] = facility;
  }

  const std::map<EdgeKey, std::int64_t>& bought() const noexcept { return bought_; }
  const std::vector<std::vector<EdgeKey>>& rented() const noexcept { return rented_; }
  const std::set<std::size_t>& penalties_paid() const noexcept { return penalties_; }
  const std::set<PointId>& opened() const noexcept { return opened_; }
  const std::vector<std::optional<PointId>>& assignments() const noexcept { return assignment_; }

  // c(H), counting multiplicities.
  double bought_length(const MetricSpace& m) const {
    double s = 0.0;
    for (const auto& [e, mult] : bought_) s += static_cast<double>(mult) * m(e.first, e.second);
    return s;
  }

 private:
  void grow(std::size_t request) {
    if (rented_.size() <= request) {
      rented_.resize(request + 1);
      assignment_.resize(request + 1);
    }
  }

  std::map<EdgeKey, std::int64_t> bought_;
  std::vector<std::vector<EdgeKey>> rented_;
  std::set<std::size_t> penalties_;
  std::set<PointId> opened_;
  std::vector<std::optional<PointId>> assignment_;
};

struct CostBreakdown {
  double buy = 0.0;
  double rent = 0.0;
  double penalty = 0.0;
  double opening = 0.0;
  double total = 0.0;
};

inline CostBreakdown solution_cost(const MultiGraphSolution& sol, const RequestSequence& seq,
                                   const MetricSpace& m) {
  CostBreakdown c;
  c.buy = (has_buy_factor(seq.problem) ? seq.M : 1.0) * sol.bought_length(m);
  for (const auto& q : sol.rented())
    for (const auto& e : q) c.rent += m(e.first, e.second);
  for (std::size_t i : sol.penalties_paid())
    if (i < seq.requests.size()) c.penalty += seq.requests[i].penalty;
  for (PointId x : sol.opened())
    for (const auto& f : seq.facilities)
      if (f.point == x) {
        c.opening += f.cost;
        break;
      }
  c.total = c.buy + c.rent + c.penalty + c.opening;
  return c;
}

// One flag per request of `seq`, evaluated against the current solution.
inline std::vector<bool> check_feasible(const MultiGraphSolution& sol, const RequestSequence& seq,
                                        const MetricSpace& m) {
  const std::size_t n = m.size();
  std::vector<bool> ok(seq.requests.size(), false);

  DisjointSets h(n);
  for (const auto& [e, mult] : sol.bought()) h.unite(e.first, e.second);

  auto connected_with_rents = [&](std::size_t i, PointId a, PointId b) {
    if (a == b) return true;
    if (i >= sol.rented().size() || sol.rented()[i].empty()) return h.connected(a, b);
    DisjointSets g = h;
    for (const auto& e : sol.rented()[i]) g.unite(e.first, e.second);
    return g.connected(a, b);
  };

  if (seq.problem == Problem::SteinerNetwork) {
    for (std::size_t i = 0; i < seq.requests.size(); ++i) {
      const auto& r = seq.requests[i];
      if (r.s == r.t) {
        ok[i] = true;
        continue;
      }
      MaxFlow f(n);
      for (const auto& [e, mult] : sol.bought()) f.add_undirected(e.first, e.second, mult);
      ok[i] = f.run(r.s, r.t, r.requirement) >= r.requirement;
    }
    return ok;
  }

  if (seq.problem == Problem::CFL) {
    const PointId root = *seq.root;
    bool facilities_connected = true;
    for (PointId x : sol.opened())
      if (!h.connected(x, root)) facilities_connected = false;
    for (std::size_t i = 0; i < seq.requests.size(); ++i) {
      const bool assigned = i < sol.assignments().size() && sol.assignments()[i].has_value();
      ok[i] = facilities_connected && assigned && sol.opened().count(*sol.assignments()[i]) > 0;
    }
    return ok;
  }

  for (std::size_t i = 0; i < seq.requests.size(); ++i) {
    const auto& r = seq.requests[i];
    if (seq.problem == Problem::PCST && sol.penalties_paid().count(i)) {
      ok[i] = true;
      continue;
    }
    if (is_pair_problem(seq.problem)) {
      ok[i] = connected_with_rents(i, r.s, r.t);
    } else {
      ok[i] = connected_with_rents(i, r.s, *seq.root);
    }
  }
  return ok;
}

}  // namespace ond
