#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ond/errors.hpp"
#include "ond/metric.hpp"
#include "ond/problem.hpp"

namespace ond {

enum class Decision { Buy, Rent, Penalty, Virtual, Free };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::Buy: return "buy";
    case Decision::Rent: return "rent";
    case Decision::Penalty: return "penalty";
    case Decision::Virtual: return "virtual";
    case Decision::Free: return "free";
  }
  return "?";
}

inline Decision parse_decision(const std::string& s) {
  for (Decision d : {Decision::Buy, Decision::Rent, Decision::Penalty, Decision::Virtual,
                     Decision::Free})
    if (s == to_string(d)) return d;
  throw Error(ErrorCode::InvalidInput, "unknown decision '" + s + "'");
}

// An edge bought by the forest algorithm, tagged with the loop level that
// added it. Zero-length edges between coincident points carry no level.
struct LeveledEdge {
  PointId u = 0;
  PointId v = 0;
  std::optional<int> level;
};

struct TraceRecord {
  std::size_t index = 0;
  PointId point = 0;               // terminal, client, or s_i
  std::optional<PointId> mate;     // t_i
  double a = 0.0;                  // defining distance
  std::optional<int> cls;          // floor(log2 a); absent when a == 0
  Decision decision = Decision::Free;
  std::optional<PointId> anchor;   // nearest buy terminal or open facility
  std::vector<std::size_t> witnesses;       // W(i), or W(s_i) for pairs
  std::vector<std::size_t> mate_witnesses;  // W(t_i)
  std::optional<PointId> rent_terminal;     // endpoint that entered R_j
  double share = 0.0;                       // 2^{j+1} for rent terminals, rho_i for PCST
  std::optional<int> instance;              // Steiner network copy level
  std::vector<LeveledEdge> edges;           // forest edges added for this request
  std::optional<PointId> virtual_facility;  // sigma-hat(i)
  std::vector<PointId> virtual_opened;      // facilities the virtual solution opened now
  std::optional<PointId> opened;            // facility opened into F'
  std::optional<PointId> assigned;          // sigma(i)
};

struct RunTrace {
  Problem problem = Problem::SteinerTree;
  std::optional<PointId> root;
  double M = 0.0;
  std::vector<TraceRecord> records;
};

struct Violation {
  std::string check;
  std::string detail;
};

inline void to_json(nlohmann::json& j, const LeveledEdge& e) {
  j = nlohmann::json{{"u", e.u}, {"v", e.v}};
  if (e.level) j["level"] = *e.level;
}

inline void from_json(const nlohmann::json& j, LeveledEdge& e) {
  e.u = j.at("u").get<PointId>();
  e.v = j.at("v").get<PointId>();
  e.level.reset();
  if (j.contains("level")) e.level = j.at("level").get<int>();
}

inline void to_json(nlohmann::json& j, const TraceRecord& r) {
  j = nlohmann::json{{"index", r.index}, {"point", r.point}, {"a", r.a},
                     {"decision", to_string(r.decision)}};
  if (r.mate) j["mate"] = *r.mate;
  if (r.cls) j["class"] = *r.cls;
  if (r.anchor) j["anchor"] = *r.anchor;
  if (!r.witnesses.empty()) j["witnesses"] = r.witnesses;
  if (!r.mate_witnesses.empty()) j["mate_witnesses"] = r.mate_witnesses;
  if (r.rent_terminal) j["rent_terminal"] = *r.rent_terminal;
  if (r.share != 0.0) j["share"] = r.share;
  if (r.instance) j["instance"] = *r.instance;
  if (!r.edges.empty()) j["edges"] = r.edges;
  if (r.virtual_facility) j["virtual_facility"] = *r.virtual_facility;
  if (!r.virtual_opened.empty()) j["virtual_opened"] = r.virtual_opened;
  if (r.opened) j["opened"] = *r.opened;
  if (r.assigned) j["assigned"] = *r.assigned;
}

inline void from_json(const nlohmann::json& j, TraceRecord& r) {
  auto opt_point = [&](const char* key) -> std::optional<PointId> {
    if (!j.contains(key)) return std::nullopt;
    return j.at(key).get<PointId>();
  };
  r = TraceRecord{};
  r.index = j.at("index").get<std::size_t>();
  r.point = j.at("point").get<PointId>();
  r.a = j.at("a").get<double>();
  r.decision = parse_decision(j.at("decision").get<std::string>());
  r.mate = opt_point("mate");
  if (j.contains("class")) r.cls = j.at("class").get<int>();
  r.anchor = opt_point("anchor");
  if (j.contains("witnesses")) r.witnesses = j.at("witnesses").get<std::vector<std::size_t>>();
  if (j.contains("mate_witnesses"))
    r.mate_witnesses = j.at("mate_witnesses").get<std::vector<std::size_t>>();
  r.rent_terminal = opt_point("rent_terminal");
  if (j.contains("share")) r.share = j.at("share").get<double>();
  if (j.contains("instance")) r.instance = j.at("instance").get<int>();
  if (j.contains("edges")) r.edges = j.at("edges").get<std::vector<LeveledEdge>>();
  r.virtual_facility = opt_point("virtual_facility");
  if (j.contains("virtual_opened"))
    r.virtual_opened = j.at("virtual_opened").get<std::vector<PointId>>();
  r.opened = opt_point("opened");
  r.assigned = opt_point("assigned");
}

// One JSON object per line, one line per request.
inline void write_trace_lines(std::ostream& os, const RunTrace& t) {
  for (const auto& r : t.records) os << nlohmann::json(r).dump() << '\n';
}

inline std::vector<TraceRecord> read_trace_lines(std::istream& is) {
  std::vector<TraceRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(nlohmann::json::parse(line).get<TraceRecord>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidInput, std::string("bad trace line: ") + e.what());
    }
  }
  return out;
}

}  // namespace ond
