#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ond/errors.hpp"
#include "ond/metric.hpp"
#include "ond/rng.hpp"

namespace ond {

struct HstNode {
  std::optional<std::size_t> parent;
  int edge_level = 0;      // level of the edge to the parent; unused at the root
  double edge_len = 0.0;   // normally 2^(edge_level - 1)
  std::optional<PointId> terminal;
  std::vector<std::size_t> children;
};

// Rooted tree whose leaves are terminal points. Node 0 is the root and
// parents always precede their children.
class Hst {
 public:
  Hst() = default;

  Hst(int root_level, std::vector<HstNode> nodes) : root_level_(root_level), nodes_(std::move(nodes)) {
    if (nodes_.empty() || nodes_[0].parent)
      throw Error(ErrorCode::InvalidInput, "tree needs a root at index 0");
    for (auto& x : nodes_) x.children.clear();
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      if (!nodes_[i].parent || *nodes_[i].parent >= i)
        throw Error(ErrorCode::InvalidInput, "parents must precede children");
      nodes_[*nodes_[i].parent].children.push_back(i);
    }
    index();
  }

  const std::vector<HstNode>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  int root_level() const noexcept { return root_level_; }
  const std::vector<PointId>& terminals() const noexcept { return terminals_; }

  // Lowest edge level present, never above 0.
  int min_level() const noexcept { return min_level_; }
  bool extended() const noexcept { return min_level_ < 0; }

  bool has_terminal(PointId u) const { return leaf_.count(u) > 0; }

  std::size_t leaf_of(PointId u) const {
    auto it = leaf_.find(u);
    if (it == leaf_.end()) throw Error(ErrorCode::UnknownLeaf, "point " + std::to_string(u));
    return it->second;
  }

  // Terminals below node x, ascending. For x != root this is the cut C_e of
  // the edge e above x.
  const std::vector<PointId>& cut(std::size_t x) const { return cuts_[x]; }

  // Node y lies in the subtree of x (inclusive).
  bool contains(std::size_t x, std::size_t y) const { return tin_[x] <= tin_[y] && tin_[y] < tout_[x]; }

  bool in_subtree(std::size_t x, PointId u) const { return contains(x, leaf_of(u)); }

  // True iff the edge above x lies on the u-v path.
  bool separates(std::size_t x, PointId u, PointId v) const {
    return in_subtree(x, u) != in_subtree(x, v);
  }

  double depth_length(std::size_t x) const { return root_dist_[x]; }

  std::size_t lca(std::size_t a, std::size_t b) const {
    while (depth_[a] > depth_[b]) a = *nodes_[a].parent;
    while (depth_[b] > depth_[a]) b = *nodes_[b].parent;
    while (a != b) {
      a = *nodes_[a].parent;
      b = *nodes_[b].parent;
    }
    return a;
  }

  double distance(PointId u, PointId v) const {
    const std::size_t a = leaf_of(u), b = leaf_of(v);
    if (a == b) return 0.0;
    const std::size_t c = lca(a, b);
    return (root_dist_[a] - root_dist_[c]) + (root_dist_[b] - root_dist_[c]);
  }

  double total_length() const {
    double s = 0.0;
    for (std::size_t i = 1; i < nodes_.size(); ++i) s += nodes_[i].edge_len;
    return s;
  }

  // Effective level of the edge above x; the root counts as root_level + 1.
  int level_above(std::size_t x) const {
    return x == 0 ? root_level_ + 1 : nodes_[x].edge_level;
  }

 private:
  void index() {
    const std::size_t n = nodes_.size();
    cuts_.assign(n, {});
    depth_.assign(n, 0);
    root_dist_.assign(n, 0.0);
    tin_.assign(n, 0);
    tout_.assign(n, 0);
    leaf_.clear();
    terminals_.clear();
    min_level_ = 0;
    for (std::size_t i = 1; i < n; ++i) {
      const std::size_t p = *nodes_[i].parent;
      depth_[i] = depth_[p] + 1;
      root_dist_[i] = root_dist_[p] + nodes_[i].edge_len;
      min_level_ = std::min(min_level_, nodes_[i].edge_level);
    }
    for (std::size_t i = 0; i < n; ++i)
      if (nodes_[i].terminal) {
        leaf_.emplace(*nodes_[i].terminal, i);
        terminals_.push_back(*nodes_[i].terminal);
      }
    std::sort(terminals_.begin(), terminals_.end());
    terminals_.erase(std::unique(terminals_.begin(), terminals_.end()), terminals_.end());
    for (std::size_t i = n; i-- > 0;) {
      if (nodes_[i].terminal) cuts_[i].push_back(*nodes_[i].terminal);
      if (nodes_[i].parent) {
        auto& pc = cuts_[*nodes_[i].parent];
        pc.insert(pc.end(), cuts_[i].begin(), cuts_[i].end());
      }
    }
    for (auto& c : cuts_) std::sort(c.begin(), c.end());
    // Iterative preorder numbering for subtree membership tests.
    std::size_t clock = 0;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
    tin_[0] = clock++;
    while (!stack.empty()) {
      auto& [x, next] = stack.back();
      if (next < nodes_[x].children.size()) {
        const std::size_t c = nodes_[x].children[next++];
        tin_[c] = clock++;
        stack.emplace_back(c, 0);
      } else {
        tout_[x] = clock;
        stack.pop_back();
      }
    }
  }

  int root_level_ = 0;
  std::vector<HstNode> nodes_;
  std::vector<std::vector<PointId>> cuts_;
  std::vector<std::size_t> depth_;
  std::vector<double> root_dist_;
  std::vector<std::size_t> tin_, tout_;
  std::map<PointId, std::size_t> leaf_;
  std::vector<PointId> terminals_;
  int min_level_ = 0;
};

inline double tree_distance(const Hst& t, PointId u, PointId v) { return t.distance(u, v); }

// Level-j cuts: for each terminal, the cut of the highest edge of level <= j
// on its leaf-to-root path, or the singleton when no such edge exists.
inline std::vector<std::vector<PointId>> cuts_at_level(const Hst& t, int j) {
  if (j < t.min_level() || j > t.root_level())
    throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(j) + " outside [" +
                                                std::to_string(t.min_level()) + ", " +
                                                std::to_string(t.root_level()) + "]");
  std::vector<std::vector<PointId>> out;
  std::vector<bool> seen(t.size(), false);
  for (PointId u : t.terminals()) {
    std::optional<std::size_t> best;
    for (std::size_t x = t.leaf_of(u); x != 0; x = *t.nodes()[x].parent) {
      if (t.nodes()[x].edge_level <= j) best = x;
      else break;
    }
    if (!best) {
      out.push_back({u});
    } else if (!seen[*best]) {
      seen[*best] = true;
      out.push_back(t.cut(*best));
    }
  }
  return out;
}

// Names of violated tree properties; empty iff the tree is a valid expanding
// HST over its terminals.
inline std::vector<std::string> validate_hst(const Hst& t, const MetricSpace& m) {
  std::vector<std::string> bad;
  auto flag = [&](const char* name) {
    if (std::find(bad.begin(), bad.end(), name) == bad.end()) bad.emplace_back(name);
  };
  const auto& nodes = t.nodes();

  std::size_t leaf_count = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const bool leaf = nodes[i].children.empty();
    if (leaf != nodes[i].terminal.has_value()) flag("leaves");
    if (nodes[i].terminal && *nodes[i].terminal >= m.size()) flag("leaves");
    if (leaf) ++leaf_count;
  }
  if (leaf_count != t.terminals().size()) flag("leaves");

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& ch = nodes[i].children;
    for (std::size_t c : ch)
      if (nodes[c].edge_len != nodes[ch[0]].edge_len || nodes[c].edge_level != nodes[ch[0]].edge_level)
        flag("uniform_children");
    const int above = t.level_above(i);
    for (std::size_t c : ch) {
      const int lv = nodes[c].edge_level;
      if (nodes[c].edge_len != pow2(lv - 1)) flag("halving");
      if (lv >= above) flag("halving");
      if (above >= 2 && lv != above - 1) flag("halving");
    }
  }

  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const auto& c = t.cut(i);
    if (nodes[i].edge_level <= 0 && c.size() != 1) flag("level0_singletons");
    if (c.size() > 1 && !(m.diameter(c) < pow2(nodes[i].edge_level))) flag("cut_diameter");
  }

  const auto& ts = t.terminals();
  if (ts.size() <= 1 || std::find(bad.begin(), bad.end(), "leaves") != bad.end()) return bad;
  for (std::size_t a = 0; a < ts.size(); ++a)
    for (std::size_t b = a + 1; b < ts.size(); ++b) {
      const double d = m(ts[a], ts[b]);
      if (t.distance(ts[a], ts[b]) < d * (1.0 - 1e-9)) flag("expanding");
    }
  return bad;
}

// Appends a chain of singleton edges at levels -1 .. down_to below every leaf.
inline Hst extend_singleton_levels(const Hst& t, int down_to = -2) {
  if (down_to != -1 && down_to != -2)
    throw Error(ErrorCode::InvalidInput, "extension depth must be -1 or -2");
  if (t.extended()) throw Error(ErrorCode::AlreadyExtended, "tree already has levels below 0");
  std::vector<HstNode> nodes = t.nodes();
  const std::size_t original = nodes.size();
  for (std::size_t i = 0; i < original; ++i) {
    if (!nodes[i].terminal) continue;
    const PointId u = *nodes[i].terminal;
    nodes[i].terminal.reset();
    std::size_t parent = i;
    for (int lv = -1; lv >= down_to; --lv) {
      HstNode c;
      c.parent = parent;
      c.edge_level = lv;
      c.edge_len = pow2(lv - 1);
      nodes.push_back(c);
      parent = nodes.size() - 1;
    }
    nodes[parent].terminal = u;
  }
  return Hst(t.root_level(), std::move(nodes));
}

// Randomized hierarchical decomposition: a log-uniform scale beta in [1, 2)
// and a random priority order of the terminals. A cluster at node level l
// splits by assigning each member to the first terminal in priority order
// within radius min(beta 2^(l-1), 2^l - 1); level-1 clusters split into
// singleton leaves. Radii stay below half the level's diameter budget, so no
// rescaling pass is needed.
inline Hst sample_frt(const MetricSpace& m, std::vector<PointId> terminals, std::uint64_t seed) {
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  if (terminals.empty()) throw Error(ErrorCode::EmptyTerminalSet, "no terminals to embed");
  for (PointId u : terminals)
    if (u >= m.size()) throw Error(ErrorCode::InvalidInput, "terminal index out of range");

  const std::size_t k = terminals.size();
  if (k == 1) {
    HstNode root;
    root.terminal = terminals[0];
    return Hst(0, {root});
  }
  const double maxd = m.diameter(terminals);
  int L = maxd > 0.0 ? *distance_class(maxd) + 1 : 1;
  L = std::max(L, 1);

  Rng rng(seed);
  const double beta = std::exp2(rng.uniform());
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  rng.shuffle(order);

  std::vector<HstNode> nodes(1);
  std::vector<std::vector<std::size_t>> members{std::vector<std::size_t>(k)};
  for (std::size_t i = 0; i < k; ++i) members[0][i] = i;
  std::vector<std::size_t> frontier{0};

  for (int level = L - 1; level >= 0; --level) {
    std::vector<std::size_t> next;
    for (std::size_t node : frontier) {
      std::vector<std::size_t> mem = members[node];
      if (level == 0) {
        for (std::size_t v : mem) {
          HstNode leaf;
          leaf.parent = node;
          leaf.edge_level = 1;
          leaf.edge_len = 1.0;
          leaf.terminal = terminals[v];
          nodes.push_back(leaf);
          members.emplace_back();
        }
        continue;
      }
      const double radius = std::min(beta * pow2(level - 1), pow2(level) - 1.0);
      std::map<std::size_t, std::vector<std::size_t>> groups;  // priority rank -> members
      for (std::size_t v : mem) {
        for (std::size_t rank = 0; rank < k; ++rank) {
          if (m(terminals[v], terminals[order[rank]]) <= radius) {
            groups[rank].push_back(v);
            break;
          }
        }
      }
      for (auto& [rank, g] : groups) {
        HstNode c;
        c.parent = node;
        c.edge_level = level + 1;
        c.edge_len = pow2(level);
        nodes.push_back(c);
        members.push_back(std::move(g));
        next.push_back(nodes.size() - 1);
      }
    }
    frontier = std::move(next);
  }
  return Hst(L, std::move(nodes));
}

inline nlohmann::json hst_to_json(const Hst& t) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& x = t.nodes()[i];
    nlohmann::json j{{"id", i}};
    if (x.parent) {
      j["parent"] = *x.parent;
      j["level"] = x.edge_level - 1;
      j["edge_level"] = x.edge_level;
      j["edge_len"] = x.edge_len;
    } else {
      j["parent"] = nullptr;
      j["level"] = t.root_level();
    }
    nodes.push_back(j);
  }
  nlohmann::json leaf_map = nlohmann::json::object();
  for (PointId u : t.terminals()) leaf_map[std::to_string(u)] = t.leaf_of(u);
  return {{"levels", t.root_level()}, {"nodes", nodes}, {"leaf_map", leaf_map}};
}

inline Hst hst_from_json(const nlohmann::json& j) {
  std::vector<HstNode> nodes(j.at("nodes").size());
  for (const auto& n : j.at("nodes")) {
    const std::size_t id = n.at("id").get<std::size_t>();
    if (id >= nodes.size()) throw Error(ErrorCode::InvalidInput, "node id out of range");
    if (!n.at("parent").is_null()) {
      nodes[id].parent = n.at("parent").get<std::size_t>();
      nodes[id].edge_level = n.at("edge_level").get<int>();
      nodes[id].edge_len = n.at("edge_len").get<double>();
    }
  }
  for (const auto& [key, id] : j.at("leaf_map").items())
    nodes.at(id.get<std::size_t>()).terminal = static_cast<PointId>(std::stoull(key));
  return Hst(j.at("levels").get<int>(), std::move(nodes));
}

}  // namespace ond
