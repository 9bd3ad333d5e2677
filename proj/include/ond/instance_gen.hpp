#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "ond/errors.hpp"
#include "ond/metric.hpp"
#include "ond/problem.hpp"
#include "ond/rng.hpp"

namespace ond {

inline std::vector<std::vector<double>> gen_euclidean_points(std::size_t count, std::uint64_t seed,
                                                             std::size_t dimension = 2) {
  Rng rng(seed);
  std::vector<std::vector<double>> pts(count, std::vector<double>(dimension));
  for (auto& p : pts)
    for (auto& c : p) c = rng.uniform();
  return pts;
}

// Uniform points in the unit square (cube), normalized.
inline MetricSpace gen_euclidean(std::size_t count, std::uint64_t seed, std::size_t dimension = 2) {
  return build_metric_from_points(gen_euclidean_points(count, seed, dimension));
}

// Shortest-path distances of a random connected weighted graph: a random
// spanning tree plus each remaining pair with probability `density`.
inline std::vector<std::vector<double>> gen_graph_matrix(std::size_t vertices, double density, std::uint64_t seed) {
  Rng rng(seed);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(vertices, std::vector<double>(vertices, inf));
  for (std::size_t v = 0; v < vertices; ++v) d[v][v] = 0.0;
  std::vector<std::size_t> order(vertices);
  for (std::size_t i = 0; i < vertices; ++i) order[i] = i;
  rng.shuffle(order);
  auto weight = [&] { return 1.0 + 9.0 * rng.uniform(); };
  for (std::size_t i = 1; i < vertices; ++i) {
    const std::size_t u = order[i], v = order[rng.below(i)];
    d[u][v] = d[v][u] = weight();
  }
  for (std::size_t u = 0; u < vertices; ++u)
    for (std::size_t v = u + 1; v < vertices; ++v)
      if (d[u][v] == inf && rng.uniform() < density) d[u][v] = d[v][u] = weight();
  for (std::size_t w = 0; w < vertices; ++w)
    for (std::size_t u = 0; u < vertices; ++u)
      for (std::size_t v = 0; v < vertices; ++v) d[u][v] = std::min(d[u][v], d[u][w] + d[w][v]);
  return d;
}

inline MetricSpace gen_graph_metric(std::size_t vertices, double density, std::uint64_t seed) {
  return build_metric(gen_graph_matrix(vertices, density, seed));
}

struct DiamondInstance {
  std::vector<std::vector<double>> matrix;
  MetricSpace metric;
  RequestSequence requests;  // SteinerTree, rooted at the first pole
  double opt = 0.0;          // optimal Steiner tree cost
};

inline constexpr int kMaxDiamondDepth = 10;
// Above this depth only the terminals are materialized.
inline constexpr int kFullDiamondDepth = 5;

// Recursive diamond graph: each round replaces every edge (u, v) by two
// parallel two-edge paths u-a-v and u-b-v. The terminals are the poles and,
// round by round, the midpoint a of every segment of the a-side geodesic.
// Greedy pays the pole distance plus half of it per round, while the a-side
// geodesic itself is optimal, so greedy is off by 1 + depth/2.
inline DiamondInstance gen_diamond_lb(int depth) {
  if (depth < 0 || depth > kMaxDiamondDepth)
    throw Error(ErrorCode::DepthTooLarge, "diamond depth must be in [0, " + std::to_string(kMaxDiamondDepth) + "]");
  const double span = pow2(depth);
  DiamondInstance out;
  std::vector<std::size_t> order;  // terminal vertices in arrival order, root first

  if (depth <= kFullDiamondDepth) {
    std::size_t count = 2;
    std::vector<std::pair<std::size_t, std::size_t>> edges{{0, 1}};
    std::vector<std::size_t> spine{0, 1};
    order = {0, 1};
    for (int round = 0; round < depth; ++round) {
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> a_side;
      std::vector<std::pair<std::size_t, std::size_t>> next;
      for (const auto& [u, v] : edges) {
        const std::size_t a = count++, b = count++;
        a_side[{u, v}] = a;
        next.insert(next.end(), {{u, a}, {a, v}, {u, b}, {b, v}});
      }
      edges = std::move(next);
      std::vector<std::size_t> longer{spine[0]};
      for (std::size_t i = 0; i + 1 < spine.size(); ++i) {
        const std::size_t mid = a_side.at({spine[i], spine[i + 1]});
        order.push_back(mid);
        longer.push_back(mid);
        longer.push_back(spine[i + 1]);
      }
      spine = std::move(longer);
    }
    std::vector<std::vector<std::size_t>> adj(count);
    for (const auto& [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    out.matrix.assign(count, std::vector<double>(count, 0.0));
    for (std::size_t s = 0; s < count; ++s) {
      std::vector<int> dist(count, -1);
      std::queue<std::size_t> q;
      dist[s] = 0;
      q.push(s);
      while (!q.empty()) {
        const std::size_t u = q.front();
        q.pop();
        for (std::size_t v : adj[u])
          if (dist[v] < 0) {
            dist[v] = dist[u] + 1;
            q.push(v);
          }
      }
      for (std::size_t v = 0; v < count; ++v) out.matrix[s][v] = dist[v];
    }
  } else {
    // Terminals only: they sit on one geodesic, at integer positions.
    const std::size_t k = static_cast<std::size_t>(span) + 1;
    std::vector<double> pos;
    pos.push_back(0.0);
    pos.push_back(span);
    for (int round = 1; round <= depth; ++round) {
      const double step = pow2(depth - round);
      for (double x = step; x < span; x += 2.0 * step) pos.push_back(x);
    }
    out.matrix.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) out.matrix[a][b] = std::abs(pos[a] - pos[b]);
    for (std::size_t i = 0; i < k; ++i) order.push_back(i);
  }

  out.metric = build_metric(out.matrix);
  out.requests.problem = Problem::SteinerTree;
  out.requests.root = order[0];
  for (std::size_t i = 1; i < order.size(); ++i) out.requests.requests.push_back({order[i], 0, 1, 0.0});
  out.opt = span * out.metric.scale();
  return out;
}

struct GenParams {
  double M = 1.0;
  int r_max = 1;
  PointId root = 0;
  std::size_t facilities = 0;  // CFL facilities besides the root; 0 means every point
  double facility_cost_scale = 1.0;  // opening costs uniform in [0, scale * diameter]
};

inline RequestSequence gen_requests(Problem problem, const MetricSpace& m, std::size_t count, std::uint64_t seed,
                                    const GenParams& params = {}) {
  if (m.size() == 0) throw Error(ErrorCode::InvalidInput, "empty metric");
  Rng rng(seed);
  const std::size_t n = m.size();
  RequestSequence seq;
  seq.problem = problem;
  if (is_rooted(problem)) seq.root = params.root;
  if (has_buy_factor(problem)) seq.M = params.M;
  const double diam = m.diameter();

  auto non_root = [&]() -> PointId {
    if (!seq.root || n == 1) return static_cast<PointId>(rng.below(n));
    const PointId p = static_cast<PointId>(rng.below(n - 1));
    return p >= *seq.root ? p + 1 : p;
  };

  if (problem == Problem::CFL) {
    std::vector<PointId> cand;
    for (PointId p = 0; p < n; ++p)
      if (p != params.root) cand.push_back(p);
    rng.shuffle(cand);
    const std::size_t extra = params.facilities == 0 ? cand.size() : std::min(params.facilities, cand.size());
    seq.facilities.push_back({params.root, 0.0});
    for (std::size_t i = 0; i < extra; ++i)
      seq.facilities.push_back({cand[i], params.facility_cost_scale * diam * rng.uniform()});
  }

  for (std::size_t i = 0; i < count; ++i) {
    Request r;
    if (is_pair_problem(problem)) {
      r.s = static_cast<PointId>(rng.below(n));
      if (n > 1) {
        const PointId t = static_cast<PointId>(rng.below(n - 1));
        r.t = t >= r.s ? t + 1 : t;
      } else {
        r.t = r.s;
      }
      if (problem == Problem::SteinerNetwork) {
        const double u = rng.uniform();
        r.requirement = std::clamp(static_cast<int>(std::floor(std::exp2(u * std::log2(params.r_max + 1.0)))), 1,
                                   std::max(1, params.r_max));
      }
    } else {
      r.s = non_root();
      if (problem == Problem::PCST) r.penalty = 2.0 * diam * rng.uniform();
    }
    seq.requests.push_back(r);
  }
  return seq;
}

}  // namespace ond
