#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "ond/errors.hpp"
#include "ond/metric.hpp"
#include "ond/problem.hpp"

namespace ond {

struct Instance {
  std::optional<std::vector<std::vector<double>>> points;
  std::optional<std::vector<std::vector<double>>> matrix;
  MetricSpace metric;
  RequestSequence requests;
};

namespace detail {

inline PointId as_index(const nlohmann::json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw Error(ErrorCode::InvalidInput, "expected a point index, got " + j.dump());
  return j.get<PointId>();
}

inline double as_real(const nlohmann::json& j) {
  if (!j.is_number()) throw Error(ErrorCode::InvalidInput, "expected a number, got " + j.dump());
  return j.get<double>();
}

inline std::vector<std::vector<double>> as_rows(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "expected an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(ErrorCode::InvalidInput, "expected a row array");
    std::vector<double> r;
    for (const auto& x : row) r.push_back(as_real(x));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace detail

// Request encodings: SteinerTree/SROB/CFL `i`; SteinerForest/MROB `[s, t]`;
// SteinerNetwork `[s, t, R]`; PCST `[i, penalty]`.
inline Instance parse_instance(const nlohmann::json& j) {
  static const std::set<std::string> known{"points", "matrix", "problem", "root", "M", "facilities", "requests"};
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "instance must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw Error(ErrorCode::InvalidInput, "unknown field '" + key + "'");
  if (j.contains("points") == j.contains("matrix"))
    throw Error(ErrorCode::InvalidInput, "give exactly one of 'points' and 'matrix'");
  if (!j.contains("problem") || !j.at("problem").is_string())
    throw Error(ErrorCode::InvalidInput, "missing 'problem'");

  Instance inst;
  if (j.contains("points")) {
    inst.points = detail::as_rows(j.at("points"));
    inst.metric = build_metric_from_points(*inst.points);
  } else {
    inst.matrix = detail::as_rows(j.at("matrix"));
    inst.metric = build_metric(*inst.matrix);
  }
  auto& seq = inst.requests;
  seq.problem = parse_problem(j.at("problem").get<std::string>());
  if (j.contains("root")) seq.root = detail::as_index(j.at("root"));
  if (j.contains("M")) seq.M = detail::as_real(j.at("M"));
  if (j.contains("facilities")) {
    if (!j.at("facilities").is_array()) throw Error(ErrorCode::InvalidInput, "'facilities' must be an array");
    for (const auto& f : j.at("facilities")) {
      if (!f.is_object() || f.size() != 2 || !f.contains("point") || !f.contains("cost"))
        throw Error(ErrorCode::InvalidInput, "facility entries are {\"point\", \"cost\"}");
      seq.facilities.push_back({detail::as_index(f.at("point")), detail::as_real(f.at("cost"))});
    }
  }
  if (!j.contains("requests") || !j.at("requests").is_array())
    throw Error(ErrorCode::InvalidInput, "missing 'requests' array");
  for (const auto& r : j.at("requests")) {
    Request q;
    switch (seq.problem) {
      case Problem::SteinerTree:
      case Problem::SROB:
      case Problem::CFL:
        q.s = detail::as_index(r);
        break;
      case Problem::SteinerForest:
      case Problem::MROB:
        if (!r.is_array() || r.size() != 2) throw Error(ErrorCode::InvalidInput, "pair requests are [s, t]");
        q.s = detail::as_index(r[0]);
        q.t = detail::as_index(r[1]);
        break;
      case Problem::SteinerNetwork:
        if (!r.is_array() || r.size() != 3 || !r[2].is_number_integer())
          throw Error(ErrorCode::InvalidInput, "network requests are [s, t, R] with integer R");
        q.s = detail::as_index(r[0]);
        q.t = detail::as_index(r[1]);
        q.requirement = r[2].get<int>();
        break;
      case Problem::PCST:
        if (!r.is_array() || r.size() != 2) throw Error(ErrorCode::InvalidInput, "prize requests are [i, penalty]");
        q.s = detail::as_index(r[0]);
        q.penalty = detail::as_real(r[1]);
        break;
    }
    seq.requests.push_back(q);
  }
  seq.validate(inst.metric.size());
  return inst;
}

inline nlohmann::json requests_to_json(const RequestSequence& seq) {
  nlohmann::json reqs = nlohmann::json::array();
  for (const auto& r : seq.requests) {
    switch (seq.problem) {
      case Problem::SteinerTree:
      case Problem::SROB:
      case Problem::CFL: reqs.push_back(r.s); break;
      case Problem::SteinerForest:
      case Problem::MROB: reqs.push_back({r.s, r.t}); break;
      case Problem::SteinerNetwork: reqs.push_back({r.s, r.t, r.requirement}); break;
      case Problem::PCST: reqs.push_back({r.s, r.penalty}); break;
    }
  }
  return reqs;
}

// Exactly one of `points` and `matrix` should be set.
inline nlohmann::json instance_to_json(const std::optional<std::vector<std::vector<double>>>& points,
                                       const std::optional<std::vector<std::vector<double>>>& matrix,
                                       const RequestSequence& seq) {
  nlohmann::json j;
  if (points) j["points"] = *points;
  else j["matrix"] = matrix.value_or(std::vector<std::vector<double>>{});
  j["problem"] = to_string(seq.problem);
  if (seq.root) j["root"] = *seq.root;
  if (has_buy_factor(seq.problem)) j["M"] = seq.M;
  if (seq.problem == Problem::CFL) {
    j["facilities"] = nlohmann::json::array();
    for (const auto& f : seq.facilities) j["facilities"].push_back({{"point", f.point}, {"cost", f.cost}});
  }
  j["requests"] = requests_to_json(seq);
  return j;
}

}  // namespace ond
