#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "ond/cfl_online.hpp"
#include "ond/hst.hpp"
#include "ond/instance_gen.hpp"
#include "ond/offline_oracles.hpp"
#include "ond/prize_online.hpp"
#include "ond/rentorbuy_online.hpp"
#include "ond/steiner_online.hpp"
#include "ond/tree_oracles.hpp"

namespace ond {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitSchema = 2,
  kExitInfeasible = 3,
  kExitViolation = 4,
  kExitCapExceeded = 5,
};

inline const std::map<std::string, Problem>& algorithm_table() {
  static const std::map<std::string, Problem> table{
      {"greedy", Problem::SteinerTree}, {"bc", Problem::SteinerForest}, {"sn", Problem::SteinerNetwork},
      {"srob", Problem::SROB},          {"mrob", Problem::MROB},        {"cfl", Problem::CFL},
      {"pcst", Problem::PCST}};
  return table;
}

inline Problem algorithm_problem(const std::string& algo) {
  auto it = algorithm_table().find(algo);
  if (it == algorithm_table().end()) throw Error(ErrorCode::InvalidInput, "unknown algorithm '" + algo + "'");
  return it->second;
}

inline RunResult run_algorithm(const MetricSpace& m, const RequestSequence& seq, const StepObserver& obs = {}) {
  switch (seq.problem) {
    case Problem::SteinerTree: return run_greedy_st(m, seq, obs);
    case Problem::SteinerForest: return run_bc_sf(m, seq, obs);
    case Problem::SteinerNetwork: return run_sn(m, seq, obs);
    case Problem::SROB: return run_srob(m, seq, obs);
    case Problem::MROB: return run_mrob(m, seq, obs);
    case Problem::CFL: return run_cfl(m, seq, obs);
    case Problem::PCST: return run_pcst(m, seq, obs);
  }
  throw Error(ErrorCode::InvalidInput, "unsupported problem");
}

inline bool within(double lhs, double rhs) {
  return lhs <= rhs + 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

// Runs the algorithm and checks feasibility after every request.
struct CheckedRun {
  RunResult result;
  std::vector<bool> prefix_feasible;
  CostBreakdown cost;
};

inline CheckedRun checked_run(const MetricSpace& m, const RequestSequence& seq) {
  CheckedRun out;
  out.result = run_algorithm(m, seq, [&](std::size_t i, const MultiGraphSolution& sol) {
    const auto ok = check_feasible(sol, seq.prefix(i + 1), m);
    out.prefix_feasible.push_back(std::all_of(ok.begin(), ok.end(), [](bool b) { return b; }));
  });
  out.cost = solution_cost(out.result.solution, seq, m);
  return out;
}

inline nlohmann::json cost_json(const CostBreakdown& c) {
  return {{"buy", c.buy}, {"rent", c.rent}, {"penalty", c.penalty}, {"opening", c.opening}, {"total", c.total}};
}

// Pass/fail counts per named check plus the worst ratios against tree optima.
class CheckTally {
 public:
  void record(const std::string& name, const std::vector<Violation>& found, std::optional<std::size_t> trial = {},
              std::optional<std::uint64_t> seed = {}) {
    auto& c = counts_[name];
    if (found.empty()) {
      ++c.first;
      return;
    }
    ++c.second;
    for (const auto& v : found) {
      nlohmann::json j{{"check", v.check}, {"detail", v.detail}};
      if (trial) j["trial"] = *trial;
      if (seed) j["seed"] = *seed;
      violations_.push_back(std::move(j));
    }
  }

  // lhs <= factor * opt, also tracking lhs / opt.
  void bound(const std::string& name, double lhs, double opt, double factor, std::optional<std::size_t> trial = {},
             std::optional<std::uint64_t> seed = {}) {
    if (opt > 0.0) {
      auto [it, fresh] = max_ratio_.emplace(name, lhs / opt);
      if (!fresh) it->second = std::max(it->second, lhs / opt);
    }
    std::vector<Violation> v;
    if (!within(lhs, factor * opt)) {
      std::ostringstream os;
      os.precision(17);
      os << lhs << " > " << factor << " * " << opt;
      v.push_back({name, os.str()});
    }
    record(name, v, trial, seed);
  }

  void flag(std::string note) { flagged_.push_back(std::move(note)); }

  void merge(const CheckTally& o) {
    for (const auto& [k, c] : o.counts_) {
      counts_[k].first += c.first;
      counts_[k].second += c.second;
    }
    violations_.insert(violations_.end(), o.violations_.begin(), o.violations_.end());
    for (const auto& [k, r] : o.max_ratio_) {
      auto [it, fresh] = max_ratio_.emplace(k, r);
      if (!fresh) it->second = std::max(it->second, r);
    }
    flagged_.insert(flagged_.end(), o.flagged_.begin(), o.flagged_.end());
  }

  std::size_t failures() const {
    std::size_t f = 0;
    for (const auto& [k, c] : counts_) f += c.second;
    return f;
  }

  const std::map<std::string, double>& max_ratio() const noexcept { return max_ratio_; }

  nlohmann::json to_json(std::size_t max_violations = 50) const {
    nlohmann::json checks = nlohmann::json::object();
    for (const auto& [k, c] : counts_) checks[k] = {{"passed", c.first}, {"failed", c.second}};
    nlohmann::json viol = nlohmann::json::array();
    for (std::size_t i = 0; i < violations_.size() && i < max_violations; ++i) viol.push_back(violations_[i]);
    return {{"checks", checks},
            {"max_ratio", max_ratio_},
            {"violations", viol},
            {"violation_count", violations_.size()},
            {"flagged", flagged_.size()}};
  }

 private:
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts_;
  std::vector<nlohmann::json> violations_;
  std::map<std::string, double> max_ratio_;
  std::vector<std::string> flagged_;
};

// Runs fn(i) for i in [0, count) on up to `jobs` threads; results keep index order.
template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w)
    workers.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

namespace detail {

inline std::vector<PointPair> request_pairs(const RequestSequence& seq) {
  std::vector<PointPair> out;
  for (const auto& r : seq.requests) out.emplace_back(r.s, r.t);
  return out;
}

inline std::vector<PointId> request_points(const RequestSequence& seq) {
  std::vector<PointId> out;
  for (const auto& r : seq.requests) out.push_back(r.s);
  return out;
}

inline std::vector<Penalized> request_penalties(const RequestSequence& seq) {
  std::vector<Penalized> out;
  for (const auto& r : seq.requests) out.push_back({r.s, r.penalty});
  return out;
}

// Bought edges must match greedy Steiner tree replayed on the requests that
// joined the tree.
inline std::vector<Violation> check_greedy_replay(const MetricSpace& m, const RequestSequence& seq,
                                                  const RunTrace& trace, const MultiGraphSolution& sol) {
  RequestSequence tree_seq;
  tree_seq.problem = Problem::SteinerTree;
  tree_seq.root = seq.root;
  for (const auto& r : trace.records)
    if (r.decision == Decision::Buy || r.decision == Decision::Free) tree_seq.requests.push_back(seq.requests[r.index]);
  const auto replay = run_greedy_st(m, tree_seq);
  if (replay.solution.bought() != sol.bought()) return {{"greedy_replay", "bought edges differ from greedy replay"}};
  return {};
}

inline std::map<int, std::vector<std::vector<PointId>>> forest_covers(const Hst& t,
                                                                      const std::vector<TraceRecord>& recs) {
  std::map<int, std::vector<std::vector<PointId>>> covers;
  int top = -1;
  for (const auto& r : recs)
    if (r.cls) top = std::max(top, *r.cls);
  for (int j = 0; j <= top; ++j) covers[j] = cover_from_hst(t, recs, j);
  return covers;
}

inline std::vector<Violation> metagraph_checks(const Hst& t, const MetricSpace& m, const RunTrace& trace) {
  std::vector<Violation> out;
  std::set<std::optional<int>> instances;
  for (const auto& r : trace.records) instances.insert(r.instance);
  for (const auto& inst : instances) {
    const auto recs = forest_records(trace, inst);
    try {
      const auto v = check_metagraph_acyclic(recs, m, forest_covers(t, recs));
      out.insert(out.end(), v.begin(), v.end());
    } catch (const Error& e) {
      out.push_back({"metagraph_acyclic", e.what()});
    }
  }
  return out;
}

inline double cfl_rent_part(const RunResult& res, const RunTrace& trace, const MetricSpace& m, double M) {
  double s = M * res.solution.bought_length(m);
  for (const auto& r : trace.records)
    if (r.decision == Decision::Rent) s += r.a;
  return s;
}

}  // namespace detail

// Tree-independent checks of one run.
inline CheckTally run_checks(const MetricSpace& m, const RequestSequence& seq, const CheckedRun& run,
                             const RunTrace& trace, bool forged) {
  CheckTally tally;
  const auto& res = run.result;
  if (!forged) {
    std::vector<Violation> feas;
    for (std::size_t i = 0; i < run.prefix_feasible.size(); ++i)
      if (!run.prefix_feasible[i]) feas.push_back({"prefix_feasibility", "prefix " + std::to_string(i + 1)});
    tally.record("prefix_feasibility", feas);
    std::vector<Violation> acct;
    if (std::abs(run.cost.total - res.cost) > 1e-9 * std::max(1.0, std::abs(run.cost.total)))
      acct.push_back({"cost_accounting", "solution cost differs from the online total"});
    tally.record("cost_accounting", acct);
  }
  switch (seq.problem) {
    case Problem::SteinerTree:
      tally.record("class_separation", check_class_separation(trace, m));
      break;
    case Problem::SteinerForest:
      tally.record("forest_edges", check_forest_edges(forest_records(trace), m));
      break;
    case Problem::SteinerNetwork: {
      std::set<std::optional<int>> levels;
      for (const auto& r : trace.records) levels.insert(r.instance);
      std::vector<Violation> v;
      for (const auto& l : levels) {
        auto part = check_forest_edges(forest_records(trace, l), m);
        v.insert(v.end(), part.begin(), part.end());
      }
      tally.record("forest_edges", v);
      if (!forged) tally.record("sn_multiplicity", check_sn_multiplicity(trace, res.solution));
      break;
    }
    case Problem::SROB:
      tally.record("class_separation", check_class_separation(trace, m));
      tally.record("witness_disjointness", check_witness_disjointness(trace, m));
      if (!forged) {
        tally.bound("srob_cost_vs_share", run.cost.total, rent_share(trace), 2.0);
        tally.record("greedy_replay", detail::check_greedy_replay(m, seq, trace, res.solution));
      }
      break;
    case Problem::MROB:
      tally.record("witness_disjointness", check_witness_disjointness(trace, m));
      tally.record("forest_edges", check_forest_edges(forest_records(trace), m));
      if (!forged) tally.bound("mrob_cost_vs_share", run.cost.total, rent_share(trace), 2.0);
      break;
    case Problem::CFL: {
      tally.record("cfl_invariants", check_cfl_invariants(trace, m));
      if (!forged) {
        tally.bound("cfl_rent_vs_share", detail::cfl_rent_part(res, trace, m, seq.M), rent_share(trace), 3.0);
        std::map<PointId, double> fcost;
        for (const auto& f : seq.facilities) fcost[f.point] = f.cost;
        double lhs = 0.0, rhs = 0.0;
        std::set<PointId> virt{*seq.root};
        for (const auto& r : trace.records) {
          virt.insert(r.virtual_opened.begin(), r.virtual_opened.end());
          const double dv = m(r.point, *r.virtual_facility);
          if (r.opened) lhs += fcost.at(*r.opened);
          if (r.decision == Decision::Virtual) lhs += r.a;
          if (r.decision == Decision::Buy) lhs += dv;
          rhs += 4.0 * dv;
        }
        for (PointId x : virt) rhs += fcost.at(x);
        tally.bound("cfl_cost_split", lhs, rhs, 1.0);
      }
      break;
    }
    case Problem::PCST:
      if (!forged) tally.record("greedy_replay", detail::check_greedy_replay(m, seq, trace, res.solution));
      break;
  }
  return tally;
}

// Checks against one sampled tree t and its extension ext.
inline CheckTally tree_checks(const MetricSpace& m, const RequestSequence& seq, const CheckedRun& run,
                              const RunTrace& trace, const Hst& t, const Hst& ext, std::size_t trial,
                              std::uint64_t seed) {
  CheckTally tally;
  auto as_violations = [](const std::vector<std::string>& names) {
    std::vector<Violation> v;
    for (const auto& n : names) v.push_back({"hst_valid", n});
    return v;
  };
  auto bad = validate_hst(t, m);
  auto bad_ext = validate_hst(ext, m);
  bad.insert(bad.end(), bad_ext.begin(), bad_ext.end());
  tally.record("hst_valid", as_violations(bad), trial, seed);

  const double total = run.cost.total;
  const double M = seq.M;
  switch (seq.problem) {
    case Problem::SteinerTree:
      tally.bound("st_cost_vs_tree", total, opt_tree_steiner_tree(t), 4.0, trial, seed);
      break;
    case Problem::SteinerForest:
      tally.bound("sf_cost_vs_tree", total, opt_tree_steiner_forest(t, detail::request_pairs(seq)), 4.0, trial, seed);
      tally.record("metagraph_acyclic", detail::metagraph_checks(t, m, trace), trial, seed);
      break;
    case Problem::SteinerNetwork: {
      std::vector<int> reqs;
      for (const auto& r : seq.requests) reqs.push_back(r.requirement);
      tally.bound("sn_cost_vs_tree", total, opt_tree_steiner_network(t, detail::request_pairs(seq), reqs), 16.0, trial,
                  seed);
      tally.record("metagraph_acyclic", detail::metagraph_checks(t, m, trace), trial, seed);
      break;
    }
    case Problem::SROB: {
      const double opt = opt_tree_rob_single(ext, *seq.root, detail::request_points(seq), M);
      tally.bound("srob_share_vs_tree", rent_share(trace), opt, 8.0, trial, seed);
      tally.bound("srob_cost_vs_tree", total, opt, 16.0, trial, seed);
      tally.record("cut_capacity", check_cut_capacity(trace, ext), trial, seed);
      break;
    }
    case Problem::MROB: {
      const double opt = opt_tree_rob_multi(ext, detail::request_pairs(seq), M);
      tally.bound("mrob_share_vs_tree", rent_share(trace), opt, 16.0, trial, seed);
      tally.bound("mrob_cost_vs_tree", total, opt, 32.0, trial, seed);
      tally.record("cut_capacity", check_cut_capacity(trace, ext), trial, seed);
      tally.record("metagraph_acyclic", detail::metagraph_checks(t, m, trace), trial, seed);
      break;
    }
    case Problem::CFL: {
      const double opt = opt_tree_rob_single(ext, *seq.root, detail::request_points(seq), M);
      tally.bound("cfl_share_vs_tree", rent_share(trace), opt, 16.0, trial, seed);
      tally.bound("cfl_rent_vs_tree", detail::cfl_rent_part(run.result, trace, m, M), opt, 48.0, trial, seed);
      break;
    }
    case Problem::PCST: {
      const double opt = opt_tree_pcst(ext, *seq.root, detail::request_penalties(seq));
      const double rho = total_rho(trace);
      tally.bound("pcst_share_vs_cut_bound", rho, pcst_cut_bound(trace, seq, ext), 8.0, trial, seed);
      tally.bound("pcst_share_vs_tree", rho, opt, 8.0, trial, seed);
      tally.bound("pcst_cost_vs_tree", total, opt, 16.0, trial, seed);
      auto inv = check_pcst_invariants(trace, seq, m, ext);
      tally.record("pcst_invariants", inv.violations, trial, seed);
      for (auto& f : inv.flagged) tally.flag(std::move(f));
      break;
    }
  }
  return tally;
}

struct VerifyOptions {
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::optional<std::vector<TraceRecord>> forged;
};

struct VerifyResult {
  nlohmann::json report;
  CheckTally tally;
  int exit_code = kExitOk;
};

inline VerifyResult verify_instance(const MetricSpace& m, const RequestSequence& seq, const VerifyOptions& opt) {
  const CheckedRun run = checked_run(m, seq);
  RunTrace trace = run.result.trace;
  if (opt.forged) trace.records = *opt.forged;

  VerifyResult out;
  out.tally = run_checks(m, seq, run, trace, opt.forged.has_value());

  std::vector<PointId> points = seq.terminal_points();
  for (const auto& r : trace.records) {
    points.push_back(r.point);
    if (r.mate) points.push_back(*r.mate);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  if (!points.empty()) {
    const auto per_trial = parallel_map<CheckTally>(opt.trials, opt.jobs, [&](std::size_t trial) {
      const std::uint64_t s = derive_seed(opt.seed, trial);
      const Hst t = sample_frt(m, points, s);
      const Hst ext = extend_singleton_levels(t, -2);
      return tree_checks(m, seq, run, trace, t, ext, trial, s);
    });
    for (const auto& t : per_trial) out.tally.merge(t);
  }

  out.report = out.tally.to_json();
  out.report["problem"] = to_string(seq.problem);
  out.report["trials"] = opt.trials;
  out.report["seed"] = opt.seed;
  out.report["cost"] = cost_json(run.cost);
  out.report["forged_trace"] = opt.forged.has_value();
  out.exit_code = out.tally.failures() == 0 ? kExitOk : kExitViolation;
  return out;
}

struct EmbedResult {
  nlohmann::json report;
  double mean_stretch = 0.0;      // average over pairs of the per-pair mean
  double max_mean_stretch = 0.0;  // worst pair
  std::size_t valid = 0;
  std::size_t trials = 0;
  int exit_code = kExitOk;
};

// Samples trees over all points and summarizes per-pair stretch T(u,v)/d(u,v).
inline EmbedResult embed_report(const MetricSpace& m, std::size_t trials, std::uint64_t seed, unsigned jobs = 1) {
  EmbedResult out;
  out.trials = trials;
  const std::size_t n = m.size();
  std::vector<PointPair> pairs;
  for (PointId u = 0; u < n; ++u)
    for (PointId v = u + 1; v < n; ++v)
      if (m(u, v) > 0.0) pairs.emplace_back(u, v);
  std::vector<PointId> all(n);
  for (PointId u = 0; u < n; ++u) all[u] = u;

  struct Sample {
    bool valid = false;
    std::vector<double> stretch;
  };
  std::vector<Sample> samples;
  if (n > 0)
    samples = parallel_map<Sample>(trials, jobs, [&](std::size_t trial) {
      Sample s;
      const Hst t = sample_frt(m, all, derive_seed(seed, trial));
      s.valid = validate_hst(t, m).empty();
      for (const auto& [u, v] : pairs) s.stretch.push_back(t.distance(u, v) / m(u, v));
      return s;
    });

  std::vector<double> mean(pairs.size(), 0.0);
  for (const auto& s : samples) {
    out.valid += s.valid ? 1 : 0;
    for (std::size_t p = 0; p < pairs.size(); ++p) mean[p] += s.stretch[p];
  }
  nlohmann::json table = nlohmann::json::array();
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (!samples.empty()) mean[p] /= static_cast<double>(samples.size());
    out.mean_stretch += mean[p];
    out.max_mean_stretch = std::max(out.max_mean_stretch, mean[p]);
    table.push_back({{"u", pairs[p].first}, {"v", pairs[p].second}, {"mean_stretch", mean[p]}});
  }
  if (!pairs.empty()) out.mean_stretch /= static_cast<double>(pairs.size());
  const double rate = samples.empty() ? 1.0 : static_cast<double>(out.valid) / static_cast<double>(samples.size());
  out.report = {{"points", n},
                {"trials", trials},
                {"seed", seed},
                {"valid_trees", out.valid},
                {"pass_rate", rate},
                {"mean_stretch", out.mean_stretch},
                {"max_mean_stretch", out.max_mean_stretch},
                {"log_bound", n > 1 ? 8.0 * std::log(static_cast<double>(n)) : 0.0},
                {"pairs", table}};
  out.exit_code = out.valid == samples.size() ? kExitOk : kExitViolation;
  return out;
}

struct RatioRow {
  Problem problem = Problem::SteinerTree;
  std::size_t k = 0;
  std::size_t n = 0;
  double M = 0.0;
  double alg = 0.0;
  double opt = 0.0;
  double ratio = 1.0;
  std::uint64_t seed = 0;
};

// Exact offline optimum for the problems whose oracles fit the instance.
inline double exact_optimum(const MetricSpace& m, const RequestSequence& seq) {
  switch (seq.problem) {
    case Problem::SteinerTree: {
      auto pts = detail::request_points(seq);
      pts.push_back(*seq.root);
      return dreyfus_wagner_st(m, pts);
    }
    case Problem::SteinerForest: return exact_sf(m, detail::request_pairs(seq));
    case Problem::SteinerNetwork: {
      std::vector<int> reqs;
      for (const auto& r : seq.requests) reqs.push_back(r.requirement);
      return exact_sn_tiny(m, detail::request_pairs(seq), reqs);
    }
    case Problem::SROB: return exact_srob(m, *seq.root, detail::request_points(seq), seq.M);
    case Problem::MROB: return exact_mrob(m, detail::request_pairs(seq), seq.M);
    case Problem::CFL: return exact_cfl(m, seq.facilities, detail::request_points(seq), seq.M, *seq.root);
    case Problem::PCST: return exact_pcst(m, *seq.root, detail::request_penalties(seq));
  }
  throw Error(ErrorCode::InvalidInput, "unsupported problem");
}

// Random Euclidean instance with k terminals (pair problems: k/2 pairs),
// sized to the exact oracles.
inline std::pair<MetricSpace, RequestSequence> ratio_instance(Problem p, std::size_t k, std::uint64_t seed) {
  std::size_t n = 0, count = k;
  GenParams params;
  params.M = static_cast<double>(1 + seed % 4);
  switch (p) {
    case Problem::SteinerTree:
    case Problem::PCST: n = k + 3; break;
    case Problem::SROB: n = std::min<std::size_t>(k + 3, kMaxSingleSourcePoints); break;
    case Problem::SteinerForest: n = std::max<std::size_t>(k, 2); count = (k + 1) / 2; break;
    case Problem::MROB: n = kMaxMultiSourcePoints - 1; count = (k + 1) / 2; break;
    case Problem::SteinerNetwork: n = kMaxNetworkPoints; count = (k + 1) / 2; params.r_max = kMaxNetworkRequirement; break;
    case Problem::CFL: n = k + 5; params.facilities = 6; break;
  }
  MetricSpace m = gen_euclidean(n, derive_seed(seed, 1));
  RequestSequence seq = gen_requests(p, m, count, derive_seed(seed, 2), params);
  return {std::move(m), std::move(seq)};
}

inline RatioRow ratio_row(Problem p, const MetricSpace& m, const RequestSequence& seq, std::size_t k, std::uint64_t seed) {
  RatioRow row;
  row.problem = p;
  row.k = k;
  row.n = m.size();
  row.M = seq.M;
  row.seed = seed;
  row.alg = solution_cost(run_algorithm(m, seq).solution, seq, m).total;
  row.opt = exact_optimum(m, seq);
  row.ratio = row.opt > 0.0 ? row.alg / row.opt : 1.0;
  return row;
}

inline std::vector<RatioRow> ratio_euclidean(Problem p, const std::vector<std::size_t>& sizes, std::size_t trials,
                                             std::uint64_t seed, unsigned jobs = 1) {
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t k : sizes)
    for (std::size_t t = 0; t < trials; ++t) tasks.emplace_back(k, t);
  return parallel_map<RatioRow>(tasks.size(), jobs, [&](std::size_t i) {
    const auto [k, t] = tasks[i];
    const std::uint64_t s = derive_seed(derive_seed(seed, static_cast<std::uint64_t>(p) * 1000 + k), t);
    auto [m, seq] = ratio_instance(p, k, s);
    return ratio_row(p, m, seq, k, s);
  });
}

inline std::vector<RatioRow> ratio_diamond(const std::vector<std::size_t>& depths) {
  std::vector<RatioRow> rows;
  for (std::size_t d : depths) {
    const auto inst = gen_diamond_lb(static_cast<int>(d));
    RatioRow row;
    row.problem = Problem::SteinerTree;
    row.k = inst.requests.requests.size();
    row.n = inst.metric.size();
    row.alg = solution_cost(run_greedy_st(inst.metric, inst.requests).solution, inst.requests, inst.metric).total;
    row.opt = inst.opt;
    row.ratio = row.alg / row.opt;
    row.seed = d;
    rows.push_back(row);
  }
  return rows;
}

inline std::string ratio_csv(const std::vector<RatioRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "problem,k,n,M,alg_cost,opt_cost,ratio,seed\n";
  for (const auto& r : rows)
    os << to_string(r.problem) << ',' << r.k << ',' << r.n << ',' << r.M << ',' << r.alg << ',' << r.opt << ','
       << r.ratio << ',' << r.seed << '\n';
  return os.str();
}

// Per-size maxima and the least-squares c in ratio ~ c * log2(k).
inline nlohmann::json ratio_summary(const std::vector<RatioRow>& rows) {
  std::map<std::size_t, double> worst;
  double num = 0.0, den = 0.0;
  for (const auto& r : rows) {
    auto [it, fresh] = worst.emplace(r.k, r.ratio);
    if (!fresh) it->second = std::max(it->second, r.ratio);
    if (r.k > 1) {
      const double x = std::log2(static_cast<double>(r.k));
      num += r.ratio * x;
      den += x * x;
    }
  }
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [k, w] : worst) per[std::to_string(k)] = w;
  return {{"max_ratio_by_k", per}, {"fitted_c", den > 0.0 ? num / den : 0.0}, {"rows", rows.size()}};
}

}  // namespace ond
