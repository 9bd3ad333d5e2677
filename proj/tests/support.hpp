#pragma once

// Independent brute-force oracles and fixtures shared by the test binaries.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "ond/ond.hpp"

namespace ond_test {

using ond::PointId;

inline ond::MetricSpace line(const std::vector<double>& xs) {
  std::vector<std::vector<double>> pts;
  for (double x : xs) pts.push_back({x});
  return ond::build_metric_from_points(pts);
}

inline ond::RequestSequence terminals(ond::Problem p, PointId root, const std::vector<PointId>& pts,
                                      double M = 1.0) {
  ond::RequestSequence seq;
  seq.problem = p;
  seq.root = root;
  seq.M = M;
  for (PointId x : pts) seq.requests.push_back({x, 0, 1, 0.0});
  return seq;
}

inline ond::RequestSequence pairs(ond::Problem p, const std::vector<std::pair<PointId, PointId>>& ps,
                                  double M = 1.0, const std::vector<int>& reqs = {}) {
  ond::RequestSequence seq;
  seq.problem = p;
  seq.M = M;
  for (std::size_t i = 0; i < ps.size(); ++i)
    seq.requests.push_back({ps[i].first, ps[i].second, reqs.empty() ? 1 : reqs[i], 0.0});
  return seq;
}

// Random tree with levelled edges. Leaves carry terminals 0..k-1 and all sit
// at node level 0; inner nodes at level l split their terminals into random
// groups one level down, so single-child chains occur.
inline ond::Hst random_tree(ond::Rng& rng, std::size_t max_leaves, int max_root_level) {
  const std::size_t k = 1 + rng.below(max_leaves);
  const int L = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_root_level)));
  std::vector<ond::HstNode> nodes(1);
  std::function<void(std::size_t, int, std::vector<PointId>)> grow = [&](std::size_t node, int level,
                                                                        std::vector<PointId> ts) {
    if (level == 0) {
      nodes[node].terminal = ts[0];
      return;
    }
    rng.shuffle(ts);
    // Level-1 nodes must end in singleton leaves.
    const std::size_t groups = level == 1 ? ts.size() : 1 + rng.below(ts.size());
    std::vector<std::vector<PointId>> split(groups);
    for (std::size_t i = 0; i < ts.size(); ++i) split[i < groups ? i : rng.below(groups)].push_back(ts[i]);
    for (auto& g : split) {
      ond::HstNode c;
      c.parent = node;
      c.edge_level = level;
      c.edge_len = ond::pow2(level - 1);
      nodes.push_back(c);
      grow(nodes.size() - 1, level - 1, std::move(g));
    }
  };
  std::vector<PointId> ts(k);
  for (std::size_t i = 0; i < k; ++i) ts[i] = i;
  if (k == 1 && rng.below(2) == 0) {
    nodes[0].terminal = 0;
    return ond::Hst(0, nodes);
  }
  grow(0, L, ts);
  return ond::Hst(L, nodes);
}

inline ond::Hst random_tree(ond::Rng& rng, std::size_t max_leaves, int max_root_level, std::size_t max_edges) {
  for (;;) {
    auto t = random_tree(rng, max_leaves, max_root_level);
    if (t.size() - 1 <= max_edges) return t;
  }
}

// Edge e <-> node e+1 (the edge above it).
inline std::size_t edge_count(const ond::Hst& t) { return t.size() - 1; }

inline std::uint64_t path_mask(const ond::Hst& t, PointId u, PointId v) {
  std::uint64_t a = 0, b = 0;
  for (std::size_t x = t.leaf_of(u); x != 0; x = *t.nodes()[x].parent) a |= std::uint64_t{1} << (x - 1);
  for (std::size_t x = t.leaf_of(v); x != 0; x = *t.nodes()[x].parent) b |= std::uint64_t{1} << (x - 1);
  return a ^ b;
}

inline double mask_length(const ond::Hst& t, std::uint64_t mask) {
  double s = 0.0;
  for (std::size_t e = 0; e < edge_count(t); ++e)
    if (mask >> e & 1) s += t.nodes()[e + 1].edge_len;
  return s;
}

// Cheapest edge subset that contains every path in `need`.
inline double brute_cover(const ond::Hst& t, const std::vector<std::uint64_t>& need) {
  const std::size_t E = edge_count(t);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << E); ++s) {
    bool ok = true;
    for (auto p : need) ok = ok && (p & ~s) == 0;
    if (ok) best = std::min(best, mask_length(t, s));
  }
  return best;
}

inline double brute_steiner_tree(const ond::Hst& t) {
  std::vector<std::uint64_t> need;
  const auto& ts = t.terminals();
  for (std::size_t i = 1; i < ts.size(); ++i) need.push_back(path_mask(t, ts[0], ts[i]));
  return brute_cover(t, need);
}

inline double brute_steiner_forest(const ond::Hst& t, const std::vector<ond::PointPair>& ps) {
  std::vector<std::uint64_t> need;
  for (auto [s, u] : ps) need.push_back(path_mask(t, s, u));
  return brute_cover(t, need);
}

// Enumerates edge multiplicities 0..max(R); a pair is served iff every edge
// of its unique path has at least R copies (tree paths are the only routes).
inline double brute_steiner_network(const ond::Hst& t, const std::vector<ond::PointPair>& ps,
                                    const std::vector<int>& reqs) {
  const std::size_t E = edge_count(t);
  const int top = reqs.empty() ? 0 : *std::max_element(reqs.begin(), reqs.end());
  std::vector<std::uint64_t> paths;
  for (auto [s, u] : ps) paths.push_back(path_mask(t, s, u));
  std::vector<int> mult(E, 0);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, double)> go = [&](std::size_t e, double cost) {
    if (e == E) {
      for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t x = 0; x < E; ++x)
          if ((paths[i] >> x & 1) && mult[x] < reqs[i]) return;
      best = std::min(best, cost);
      return;
    }
    for (int c = 0; c <= top; ++c) {
      mult[e] = c;
      go(e + 1, cost + c * t.nodes()[e + 1].edge_len);
    }
  };
  go(0, 0.0);
  return best;
}

// Buy an edge subset B at M per unit length; every pair rents the rest of
// its path.
inline double brute_rob(const ond::Hst& t, const std::vector<ond::PointPair>& ps, double M) {
  const std::size_t E = edge_count(t);
  std::vector<std::uint64_t> paths;
  for (auto [s, u] : ps) paths.push_back(path_mask(t, s, u));
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << E); ++b) {
    double c = M * mask_length(t, b);
    for (auto p : paths) c += mask_length(t, p & ~b);
    best = std::min(best, c);
  }
  return best;
}

// Edges on the path from r's leaf up to the tree root.
inline std::uint64_t above_mask(const ond::Hst& t, PointId r) {
  std::uint64_t m = 0;
  for (std::size_t x = t.leaf_of(r); x != 0; x = *t.nodes()[x].parent) m |= std::uint64_t{1} << (x - 1);
  return m;
}

// Rent-or-buy toward r counting only the edges not above r.
inline double brute_rob_single(const ond::Hst& t, PointId r, const std::vector<PointId>& occ, double M) {
  const std::size_t E = edge_count(t);
  const std::uint64_t keep = ~above_mask(t, r);
  std::vector<std::uint64_t> paths;
  for (PointId u : occ) paths.push_back(path_mask(t, u, r) & keep);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << E); ++b) {
    if (b & ~keep) continue;
    double c = M * mask_length(t, b);
    for (auto p : paths) c += mask_length(t, p & ~b);
    best = std::min(best, c);
  }
  return best;
}

// Penalize a subset; connect the rest to r by the union of tree paths.
inline double brute_pcst(const ond::Hst& t, PointId r, const std::vector<ond::Penalized>& ts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << ts.size()); ++p) {
    double c = 0.0;
    std::uint64_t used = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (p >> i & 1) c += ts[i].penalty;
      else used |= path_mask(t, ts[i].point, r);
    }
    best = std::min(best, c + mask_length(t, used));
  }
  return best;
}

// Minimum spanning tree over a point subset (Prim), used by brute-force
// Steiner enumeration.
inline double mst(const ond::MetricSpace& m, const std::vector<PointId>& pts) {
  if (pts.size() < 2) return 0.0;
  std::vector<double> key(pts.size(), std::numeric_limits<double>::infinity());
  std::vector<bool> in(pts.size(), false);
  key[0] = 0.0;
  double total = 0.0;
  for (std::size_t it = 0; it < pts.size(); ++it) {
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

// Steiner tree by enumerating every Steiner-vertex subset and taking the MST.
inline double brute_metric_steiner(const ond::MetricSpace& m, std::vector<PointId> ts) {
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<PointId> others;
  for (PointId p = 0; p < m.size(); ++p)
    if (!std::binary_search(ts.begin(), ts.end(), p)) others.push_back(p);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << others.size()); ++s) {
    auto pts = ts;
    for (std::size_t i = 0; i < others.size(); ++i)
      if (s >> i & 1) pts.push_back(others[i]);
    best = std::min(best, mst(m, pts));
  }
  return best;
}

inline bool all_true(const std::vector<bool>& v) {
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

}  // namespace ond_test
