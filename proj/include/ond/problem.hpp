#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ond/errors.hpp"
#include "ond/metric.hpp"

namespace ond {

enum class Problem { SteinerTree, SteinerForest, SteinerNetwork, SROB, MROB, CFL, PCST };

inline constexpr Problem kAllProblems[] = {Problem::SteinerTree, Problem::SteinerForest,
                                           Problem::SteinerNetwork, Problem::SROB,
                                           Problem::MROB, Problem::CFL, Problem::PCST};

inline const char* to_string(Problem p) {
  switch (p) {
    case Problem::SteinerTree: return "SteinerTree";
    case Problem::SteinerForest: return "SteinerForest";
    case Problem::SteinerNetwork: return "SteinerNetwork";
    case Problem::SROB: return "SROB";
    case Problem::MROB: return "MROB";
    case Problem::CFL: return "CFL";
    case Problem::PCST: return "PCST";
  }
  return "?";
}

inline Problem parse_problem(std::string_view s) {
  for (Problem p : kAllProblems)
    if (s == to_string(p)) return p;
  throw Error(ErrorCode::InvalidInput, "unknown problem '" + std::string(s) + "'");
}

inline bool is_rooted(Problem p) {
  return p == Problem::SteinerTree || p == Problem::SROB || p == Problem::CFL ||
         p == Problem::PCST;
}

inline bool is_pair_problem(Problem p) {
  return p == Problem::SteinerForest || p == Problem::SteinerNetwork || p == Problem::MROB;
}

// Buying costs M per unit length for these; 1 for the Steiner problems.
inline bool has_buy_factor(Problem p) {
  return p == Problem::SROB || p == Problem::MROB || p == Problem::CFL;
}

// One online request. Terminal problems use `s` only; pair problems use (s, t).
struct Request {
  PointId s = 0;
  PointId t = 0;
  int requirement = 1;   // SteinerNetwork
  double penalty = 0.0;  // PCST
};

struct Facility {
  PointId point = 0;
  double cost = 0.0;
};

struct RequestSequence {
  Problem problem = Problem::SteinerTree;
  std::optional<PointId> root;
  double M = 0.0;
  std::vector<Facility> facilities;
  std::vector<Request> requests;

  RequestSequence prefix(std::size_t k) const {
    RequestSequence out = *this;
    out.requests.resize(std::min(k, requests.size()));
    return out;
  }

  void validate(std::size_t n) const {
    auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidInput, what); };
    if (is_rooted(problem) != root.has_value())
      bad(std::string("root must be given exactly for rooted problems (") + to_string(problem) + ")");
    if (root && *root >= n) bad("root index out of range");
    if (!(M >= 0.0) || !std::isfinite(M)) bad("M must be a nonnegative real");
    if (problem == Problem::CFL) {
      if (facilities.empty()) throw Error(ErrorCode::NoFacilities, "CFL needs a facility list");
      bool has_root = false;
      for (const auto& f : facilities) {
        if (f.point >= n) bad("facility index out of range");
        if (!(f.cost >= 0.0) || !std::isfinite(f.cost)) bad("facility cost must be >= 0");
        if (f.point == *root) {
          if (f.cost != 0.0) bad("root facility must have cost 0");
          has_root = true;
        }
      }
      if (!has_root) bad("root must be listed as a facility");
    } else if (!facilities.empty()) {
      bad("facilities are only allowed for CFL");
    }
    for (const auto& r : requests) {
      if (r.s >= n || (is_pair_problem(problem) && r.t >= n)) bad("request index out of range");
      if (problem == Problem::SteinerNetwork && r.requirement < 1)
        throw Error(ErrorCode::InvalidRequirement, "requirement must be >= 1");
      if (problem == Problem::PCST && (!(r.penalty >= 0.0) || !std::isfinite(r.penalty)))
        bad("penalty must be >= 0");
    }
  }

  // Distinct points touched by the requests (plus the root), ascending.
  std::vector<PointId> terminal_points() const {
    std::vector<PointId> pts;
    if (root) pts.push_back(*root);
    for (const auto& r : requests) {
      pts.push_back(r.s);
      if (is_pair_problem(problem)) pts.push_back(r.t);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }
};

}  // namespace ond
