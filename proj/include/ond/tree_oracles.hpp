#pragma once

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

#include "ond/hst.hpp"

namespace ond {

using PointPair = std::pair<PointId, PointId>;

struct Penalized {
  PointId point = 0;
  double penalty = 0.0;
};

namespace detail {

inline std::vector<std::pair<std::size_t, std::size_t>> pair_leaves(const Hst& t,
                                                                    const std::vector<PointPair>& pairs) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(pairs.size());
  for (const auto& [s, u] : pairs) out.emplace_back(t.leaf_of(s), t.leaf_of(u));
  return out;
}

inline std::size_t require_root_leaf(const Hst& t, PointId r) {
  if (!t.has_terminal(r)) throw Error(ErrorCode::RootNotLeaf, "root " + std::to_string(r) + " is not a leaf");
  return t.leaf_of(r);
}

}  // namespace detail

// Every edge separating two terminals must be bought. Equals the total
// length unless the root sits on a single-child chain.
inline double opt_tree_steiner_tree(const Hst& t) {
  const std::size_t k = t.terminals().size();
  double total = 0.0;
  for (std::size_t x = 1; x < t.size(); ++x)
    if (t.cut(x).size() < k) total += t.nodes()[x].edge_len;
  return total;
}

inline double opt_tree_steiner_forest(const Hst& t, const std::vector<PointPair>& pairs) {
  const auto lv = detail::pair_leaves(t, pairs);
  double total = 0.0;
  for (std::size_t x = 1; x < t.size(); ++x)
    for (const auto& [a, b] : lv)
      if (t.contains(x, a) != t.contains(x, b)) {
        total += t.nodes()[x].edge_len;
        break;
      }
  return total;
}

inline double opt_tree_steiner_network(const Hst& t, const std::vector<PointPair>& pairs,
                                       const std::vector<int>& reqs) {
  const auto lv = detail::pair_leaves(t, pairs);
  double total = 0.0;
  for (std::size_t x = 1; x < t.size(); ++x) {
    int need = 0;
    for (std::size_t i = 0; i < lv.size(); ++i)
      if (t.contains(x, lv[i].first) != t.contains(x, lv[i].second)) need = std::max(need, reqs[i]);
    total += t.nodes()[x].edge_len * need;
  }
  return total;
}

// Each edge is bought (M) or rented once per separated pair.
inline double opt_tree_rob_multi(const Hst& t, const std::vector<PointPair>& pairs, double M) {
  const auto lv = detail::pair_leaves(t, pairs);
  double total = 0.0;
  for (std::size_t x = 1; x < t.size(); ++x) {
    std::size_t crossing = 0;
    for (const auto& [a, b] : lv)
      if (t.contains(x, a) != t.contains(x, b)) ++crossing;
    if (crossing > 0) total += t.nodes()[x].edge_len * std::min(M, static_cast<double>(crossing));
  }
  return total;
}

// Cut form for a root leaf r: edges whose cut avoids r, each paying
// min(M, occurrences below it). `terminals` may repeat points.
inline double opt_tree_rob_single(const Hst& t, PointId r, const std::vector<PointId>& terminals,
                                  double M) {
  const std::size_t rl = detail::require_root_leaf(t, r);
  std::vector<std::size_t> leaves;
  leaves.reserve(terminals.size());
  for (PointId u : terminals) leaves.push_back(t.leaf_of(u));
  double total = 0.0;
  for (std::size_t x = 1; x < t.size(); ++x) {
    if (t.contains(x, rl)) continue;
    std::size_t below = 0;
    for (std::size_t l : leaves) below += t.contains(x, l) ? 1 : 0;
    if (below > 0) total += t.nodes()[x].edge_len * std::min(M, static_cast<double>(below));
  }
  return total;
}

// Exact prize-collecting optimum with the tree re-rooted at the leaf r:
// each hanging subtree v is either cut off (pay its penalties) or joined
// through its parent edge.
inline double opt_tree_pcst(const Hst& t, PointId r, const std::vector<Penalized>& terminals) {
  const std::size_t rl = detail::require_root_leaf(t, r);
  const std::size_t n = t.size();
  std::vector<double> leaf_penalty(n, 0.0);
  for (const auto& p : terminals) leaf_penalty[t.leaf_of(p.point)] += p.penalty;

  // Undirected adjacency with edge lengths.
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (std::size_t x = 1; x < n; ++x) {
    const std::size_t p = *t.nodes()[x].parent;
    adj[x].emplace_back(p, t.nodes()[x].edge_len);
    adj[p].emplace_back(x, t.nodes()[x].edge_len);
  }

  // Post-order from rl.
  std::vector<std::size_t> order, parent(n, n);
  std::vector<double> up_len(n, 0.0);
  std::vector<std::size_t> stack{rl};
  parent[rl] = rl;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    order.push_back(x);
    for (const auto& [y, len] : adj[x])
      if (parent[y] == n) {
        parent[y] = x;
        up_len[y] = len;
        stack.push_back(y);
      }
  }
  std::vector<double> pen(n, 0.0), join(n, 0.0), h(n, 0.0);
  for (std::size_t i = order.size(); i-- > 0;) {
    const std::size_t x = order[i];
    pen[x] += leaf_penalty[x];
    h[x] = std::min(pen[x], up_len[x] + join[x]);
    if (x != rl) {
      pen[parent[x]] += pen[x];
      join[parent[x]] += h[x];
    }
  }
  return join[rl];
}

}  // namespace ond
