#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <vector>

#include "ond/disjoint_sets.hpp"
#include "ond/max_flow.hpp"
#include "ond/metric.hpp"
#include "ond/problem.hpp"
#include "ond/tree_oracles.hpp"

namespace ond {

inline constexpr std::size_t kMaxSteinerTerminals = 14;
inline constexpr std::size_t kMaxForestPairs = 8;
inline constexpr std::size_t kMaxSingleSourcePoints = 15;
inline constexpr std::size_t kMaxMultiSourcePoints = 7;
inline constexpr std::size_t kMaxPrizeTerminals = 12;
inline constexpr std::size_t kMaxFacilities = 12;
inline constexpr std::size_t kMaxNetworkPoints = 4;
inline constexpr int kMaxNetworkRequirement = 3;

// Minimum Steiner tree cost for every subset of a terminal list, using all
// points of the metric as Steiner vertices (subset dynamic program).
class SteinerTable {
 public:
  SteinerTable(const MetricSpace& m, std::vector<PointId> terminals) : terminals_(std::move(terminals)) {
    const std::size_t k = terminals_.size(), n = m.size();
    const std::size_t full = std::size_t{1} << k;
    dp_.assign(full * n, std::numeric_limits<double>::infinity());
    cost_.assign(full, 0.0);
    auto at = [&](std::size_t mask, std::size_t v) -> double& { return dp_[mask * n + v]; };
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t v = 0; v < n; ++v) at(std::size_t{1} << i, v) = m(terminals_[i], v);
    for (std::size_t mask = 1; mask < full; ++mask) {
      if ((mask & (mask - 1)) != 0) {
        for (std::size_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
          const std::size_t rest = mask ^ sub;
          if (sub < rest) continue;
          for (std::size_t v = 0; v < n; ++v) at(mask, v) = std::min(at(mask, v), at(sub, v) + at(rest, v));
        }
        // The metric is its own shortest-path closure, so one relaxation
        // round moves every tree root to its best position.
        std::vector<double> row(dp_.begin() + static_cast<std::ptrdiff_t>(mask * n),
                                dp_.begin() + static_cast<std::ptrdiff_t>((mask + 1) * n));
        for (std::size_t v = 0; v < n; ++v)
          for (std::size_t u = 0; u < n; ++u) at(mask, v) = std::min(at(mask, v), row[u] + m(u, v));
      }
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t v = 0; v < n; ++v) best = std::min(best, at(mask, v));
      cost_[mask] = (mask & (mask - 1)) == 0 ? 0.0 : best;
    }
  }

  const std::vector<PointId>& terminals() const noexcept { return terminals_; }
  double cost(std::size_t mask) const { return cost_[mask]; }

 private:
  std::vector<PointId> terminals_;
  std::vector<double> dp_;
  std::vector<double> cost_;
};

namespace detail {

inline std::vector<PointId> distinct(std::vector<PointId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::size_t position(const std::vector<PointId>& sorted, PointId p) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), p) - sorted.begin());
}

inline double mst_cost(const MetricSpace& m, const std::vector<PointId>& pts) {
  if (pts.size() <= 1) return 0.0;
  std::vector<double> key(pts.size(), std::numeric_limits<double>::infinity());
  std::vector<bool> in(pts.size(), false);
  key[0] = 0.0;
  double total = 0.0;
  for (std::size_t step = 0; step < pts.size(); ++step) {
    std::size_t u = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (!in[i] && (u == pts.size() || key[i] < key[u])) u = i;
    in[u] = true;
    total += key[u];
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (!in[i]) key[i] = std::min(key[i], m(pts[u], pts[i]));
  }
  return total;
}

}  // namespace detail

inline double dreyfus_wagner_st(const MetricSpace& m, const std::vector<PointId>& terminals) {
  const auto ts = detail::distinct(terminals);
  if (ts.size() > kMaxSteinerTerminals)
    throw cap_exceeded(ErrorCode::TooManyTerminals, "terminal count", ts.size(), kMaxSteinerTerminals);
  if (ts.size() <= 1) return 0.0;
  SteinerTable table(m, ts);
  return table.cost((std::size_t{1} << ts.size()) - 1);
}

// Steiner forest optimum: best partition of the pairs into groups, each
// group joined by one Steiner tree.
inline double exact_sf(const MetricSpace& m, const std::vector<PointPair>& pairs) {
  if (pairs.size() > kMaxForestPairs)
    throw cap_exceeded(ErrorCode::TooManyPairs, "pair count", pairs.size(), kMaxForestPairs);
  std::vector<PointPair> live;
  for (const auto& p : pairs)
    if (p.first != p.second && m(p.first, p.second) > 0.0) live.push_back(p);
  if (live.empty()) return 0.0;
  std::vector<PointId> pts;
  for (const auto& [s, t] : live) {
    pts.push_back(s);
    pts.push_back(t);
  }
  pts = detail::distinct(pts);
  SteinerTable table(m, pts);
  const std::size_t q = live.size(), full = std::size_t{1} << q;
  std::vector<std::size_t> group_mask(full, 0);
  for (std::size_t g = 1; g < full; ++g)
    for (std::size_t i = 0; i < q; ++i)
      if (g >> i & 1)
        group_mask[g] |= (std::size_t{1} << detail::position(pts, live[i].first)) |
                         (std::size_t{1} << detail::position(pts, live[i].second));
  std::vector<double> best(full, std::numeric_limits<double>::infinity());
  best[0] = 0.0;
  for (std::size_t s = 1; s < full; ++s) {
    const std::size_t low = s & (~s + 1);
    for (std::size_t g = s; g > 0; g = (g - 1) & s)
      if (g & low) best[s] = std::min(best[s], table.cost(group_mask[g]) + best[s ^ g]);
  }
  return best[full - 1];
}

// Single-source rent-or-buy optimum: some point set S containing r is
// bought as a spanning tree, every terminal rents to its nearest point of S.
inline double exact_srob(const MetricSpace& m, PointId r, const std::vector<PointId>& terminals, double M) {
  const std::size_t n = m.size();
  if (n > kMaxSingleSourcePoints)
    throw cap_exceeded(ErrorCode::TooManyPoints, "point count", n, kMaxSingleSourcePoints);
  double best = std::numeric_limits<double>::infinity();
  std::vector<PointId> others;
  for (PointId v = 0; v < n; ++v)
    if (v != r) others.push_back(v);
  for (std::size_t mask = 0; mask < (std::size_t{1} << others.size()); ++mask) {
    std::vector<PointId> s{r};
    for (std::size_t i = 0; i < others.size(); ++i)
      if (mask >> i & 1) s.push_back(others[i]);
    double cost = M * detail::mst_cost(m, s);
    for (PointId u : terminals) {
      double near = std::numeric_limits<double>::infinity();
      for (PointId v : s) near = std::min(near, m(u, v));
      cost += near;
    }
    best = std::min(best, cost);
  }
  return best;
}

// Multi-source rent-or-buy optimum by enumerating bought forests; pairs pay
// shortest paths with bought edges at length 0.
inline double exact_mrob(const MetricSpace& m, const std::vector<PointPair>& pairs, double M) {
  const std::size_t n = m.size();
  if (n > kMaxMultiSourcePoints)
    throw cap_exceeded(ErrorCode::TooManyPoints, "point count", n, kMaxMultiSourcePoints);
  std::vector<EdgeKey> edges;
  for (PointId u = 0; u < n; ++u)
    for (PointId v = u + 1; v < n; ++v)
      if (m(u, v) > 0.0) edges.emplace_back(u, v);

  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> chosen(edges.size(), false);
  std::vector<double> dist(n * n);
  auto evaluate = [&](double bought) {
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) dist[u * n + v] = m(u, v);
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (chosen[e]) dist[edges[e].first * n + edges[e].second] = dist[edges[e].second * n + edges[e].first] = 0.0;
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) dist[u * n + v] = std::min(dist[u * n + v], dist[u * n + w] + dist[w * n + v]);
    double cost = M * bought;
    for (const auto& [s, t] : pairs) cost += dist[s * n + t];
    best = std::min(best, cost);
  };
  // Depth-first over edges, keeping the chosen set acyclic.
  auto recurse = [&](auto&& self, std::size_t e, DisjointSets comps, double bought) -> void {
    if (e == edges.size()) {
      evaluate(bought);
      return;
    }
    self(self, e + 1, comps, bought);
    if (comps.unite(edges[e].first, edges[e].second)) {
      chosen[e] = true;
      self(self, e + 1, comps, bought + m(edges[e].first, edges[e].second));
      chosen[e] = false;
    }
  };
  recurse(recurse, 0, DisjointSets(n), 0.0);
  return best;
}

inline double exact_pcst(const MetricSpace& m, PointId r, const std::vector<Penalized>& terminals) {
  if (terminals.size() > kMaxPrizeTerminals)
    throw cap_exceeded(ErrorCode::TooManyTerminals, "terminal count", terminals.size(), kMaxPrizeTerminals);
  std::vector<PointId> pts{r};
  for (const auto& t : terminals) pts.push_back(t.point);
  pts = detail::distinct(pts);
  SteinerTable table(m, pts);
  const std::size_t k = terminals.size();
  const std::size_t root_bit = std::size_t{1} << detail::position(pts, r);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t paid = 0; paid < (std::size_t{1} << k); ++paid) {
    double cost = 0.0;
    std::size_t joined = root_bit;
    for (std::size_t i = 0; i < k; ++i) {
      if (paid >> i & 1) cost += terminals[i].penalty;
      else joined |= std::size_t{1} << detail::position(pts, terminals[i].point);
    }
    best = std::min(best, cost + table.cost(joined));
  }
  return best;
}

namespace detail {

inline double assignment_cost(const MetricSpace& m, const std::vector<Facility>& facilities, std::size_t open,
                              const std::vector<PointId>& clients) {
  double cost = 0.0;
  for (PointId c : clients) {
    double near = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < facilities.size(); ++f)
      if (open >> f & 1) near = std::min(near, m(c, facilities[f].point));
    cost += near;
  }
  for (std::size_t f = 0; f < facilities.size(); ++f)
    if (open >> f & 1) cost += facilities[f].cost;
  return cost;
}

}  // namespace detail

inline double exact_fl(const MetricSpace& m, const std::vector<Facility>& facilities,
                       const std::vector<PointId>& clients) {
  if (facilities.empty()) throw Error(ErrorCode::NoFacilities, "empty facility list");
  if (facilities.size() > kMaxFacilities)
    throw cap_exceeded(ErrorCode::TooManyFacilities, "facility count", facilities.size(), kMaxFacilities);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t open = 1; open < (std::size_t{1} << facilities.size()); ++open)
    best = std::min(best, detail::assignment_cost(m, facilities, open, clients));
  return best;
}

// Connected facility location optimum: open set containing r, joined by a
// Steiner tree bought at M per unit length.
inline double exact_cfl(const MetricSpace& m, const std::vector<Facility>& facilities,
                        const std::vector<PointId>& clients, double M, PointId r) {
  if (facilities.empty()) throw Error(ErrorCode::NoFacilities, "empty facility list");
  if (facilities.size() > kMaxFacilities)
    throw cap_exceeded(ErrorCode::TooManyFacilities, "facility count", facilities.size(), kMaxFacilities);
  std::vector<PointId> pts;
  for (const auto& f : facilities) pts.push_back(f.point);
  pts = detail::distinct(pts);
  SteinerTable table(m, pts);
  std::size_t root_facility = facilities.size();
  for (std::size_t f = 0; f < facilities.size(); ++f)
    if (facilities[f].point == r) root_facility = f;
  if (root_facility == facilities.size()) throw Error(ErrorCode::NoFacilities, "root is not a facility");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t open = 1; open < (std::size_t{1} << facilities.size()); ++open) {
    if (!(open >> root_facility & 1)) continue;
    std::size_t mask = 0;
    for (std::size_t f = 0; f < facilities.size(); ++f)
      if (open >> f & 1) mask |= std::size_t{1} << detail::position(pts, facilities[f].point);
    best = std::min(best, detail::assignment_cost(m, facilities, open, clients) + M * table.cost(mask));
  }
  return best;
}

// Steiner network optimum on at most four points. No edge ever needs more
// than R_max copies, since one pair's flow uses at most R_i of them.
inline double exact_sn_tiny(const MetricSpace& m, const std::vector<PointPair>& pairs, const std::vector<int>& reqs) {
  const std::size_t n = m.size();
  int rmax = 0;
  for (int r : reqs) rmax = std::max(rmax, r);
  if (n > kMaxNetworkPoints || rmax > kMaxNetworkRequirement)
    throw Error(ErrorCode::TooLarge, "exact network oracle handles n <= 4 and R <= 3");
  std::vector<EdgeKey> edges;
  for (PointId u = 0; u < n; ++u)
    for (PointId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  std::vector<int> mult(edges.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  auto feasible = [&]() {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs[i].first == pairs[i].second) continue;
      MaxFlow f(n);
      for (std::size_t e = 0; e < edges.size(); ++e)
        f.add_undirected(edges[e].first, edges[e].second,
                         m(edges[e].first, edges[e].second) == 0.0 ? rmax : mult[e]);
      if (f.run(pairs[i].first, pairs[i].second, reqs[i]) < reqs[i]) return false;
    }
    return true;
  };
  auto recurse = [&](auto&& self, std::size_t e, double cost) -> void {
    if (cost >= best) return;
    if (e == edges.size()) {
      if (feasible()) best = cost;
      return;
    }
    for (int c = 0; c <= rmax; ++c) {
      mult[e] = c;
      self(self, e + 1, cost + c * m(edges[e].first, edges[e].second));
    }
    mult[e] = 0;
  };
  recurse(recurse, 0, 0.0);
  return best;
}

}  // namespace ond
