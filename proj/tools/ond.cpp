#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ond/ond.hpp"

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::size_t trials = 20;
  unsigned jobs = 1;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

ond::Instance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ond::Error(ond::ErrorCode::InvalidInput, "cannot read " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ond::Error(ond::ErrorCode::InvalidInput, e.what());
  }
  return ond::parse_instance(j);
}

void check_pairing(const std::string& algo, const ond::RequestSequence& seq) {
  if (ond::algorithm_problem(algo) != seq.problem)
    throw ond::Error(ond::ErrorCode::InvalidInput,
                     "algorithm '" + algo + "' does not solve " + ond::to_string(seq.problem));
}

bool is_cap(ond::ErrorCode c) {
  using ond::ErrorCode;
  return c == ErrorCode::TooManyTerminals || c == ErrorCode::TooManyPairs || c == ErrorCode::TooManyPoints ||
         c == ErrorCode::TooManyFacilities || c == ErrorCode::TooLarge || c == ErrorCode::DepthTooLarge;
}

int cmd_gen(const Globals& g, const std::string& problem, std::size_t points, std::size_t requests,
            const ond::GenParams& params, const std::string& family, double density, std::size_t dim) {
  const ond::Problem p = ond::parse_problem(problem);
  std::optional<std::vector<std::vector<double>>> coords, matrix;
  if (family == "euclidean") coords = ond::gen_euclidean_points(points, ond::derive_seed(g.seed, 1), dim);
  else if (family == "graph") matrix = ond::gen_graph_matrix(points, density, ond::derive_seed(g.seed, 1));
  else throw ond::Error(ond::ErrorCode::InvalidInput, "unknown family '" + family + "'");
  const ond::MetricSpace m = coords ? ond::build_metric_from_points(*coords) : ond::build_metric(*matrix);
  const auto seq = ond::gen_requests(p, m, requests, ond::derive_seed(g.seed, 2), params);
  emit(g, dump(ond::instance_to_json(coords, matrix, seq)));
  return ond::kExitOk;
}

int cmd_run(const Globals& g, const std::string& path, const std::string& algo, const std::string& trace_path) {
  const auto inst = load_instance(path);
  check_pairing(algo, inst.requests);
  const auto run = ond::checked_run(inst.metric, inst.requests);
  const bool feasible = std::all_of(run.prefix_feasible.begin(), run.prefix_feasible.end(), [](bool b) { return b; });
  nlohmann::json report{{"problem", ond::to_string(inst.requests.problem)},
                        {"algo", algo},
                        {"cost", ond::cost_json(run.cost)},
                        {"online_cost", run.result.cost},
                        {"prefix_feasible", run.prefix_feasible},
                        {"feasible", feasible},
                        {"trace", trace_path.empty() ? nlohmann::json(nullptr) : nlohmann::json(trace_path)}};
  if (!trace_path.empty()) {
    std::ofstream f(trace_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + trace_path);
    ond::write_trace_lines(f, run.result.trace);
  }
  emit(g, dump(report));
  return feasible ? ond::kExitOk : ond::kExitInfeasible;
}

int cmd_verify(const Globals& g, const std::string& path, const std::string& algo, const std::string& forged) {
  const auto inst = load_instance(path);
  check_pairing(algo, inst.requests);
  if (g.trials < 1) throw ond::Error(ond::ErrorCode::InvalidInput, "--trials must be at least 1");
  ond::VerifyOptions opt;
  opt.trials = g.trials;
  opt.seed = g.seed;
  opt.jobs = g.jobs;
  if (!forged.empty()) {
    std::ifstream f(forged);
    if (!f) throw ond::Error(ond::ErrorCode::InvalidInput, "cannot read " + forged);
    opt.forged = ond::read_trace_lines(f);
  }
  auto res = ond::verify_instance(inst.metric, inst.requests, opt);
  res.report["algo"] = algo;
  emit(g, dump(res.report));
  return res.exit_code;
}

int cmd_ratio(const Globals& g, const std::string& family, const std::string& problem,
              const std::vector<std::size_t>& sizes) {
  std::vector<ond::RatioRow> rows;
  if (family == "diamond") rows = ond::ratio_diamond(sizes);
  else if (family == "euclidean") rows = ond::ratio_euclidean(ond::parse_problem(problem), sizes, g.trials, g.seed, g.jobs);
  else throw ond::Error(ond::ErrorCode::InvalidInput, "unknown family '" + family + "'");
  auto summary = ond::ratio_summary(rows);
  summary["family"] = family;
  if (family == "euclidean") summary["problem"] = problem;
  emit(g, ond::ratio_csv(rows));
  if (g.out.empty()) {
    std::cerr << dump(summary);
  } else {
    std::ofstream f(g.out + ".summary.json", std::ios::binary);
    f << dump(summary);
  }
  return ond::kExitOk;
}

int cmd_embed(const Globals& g, const std::string& path, std::size_t points) {
  const ond::MetricSpace m = path.empty() ? ond::gen_euclidean(points, ond::derive_seed(g.seed, 1))
                                          : load_instance(path).metric;
  const auto res = ond::embed_report(m, g.trials, g.seed, g.jobs);
  emit(g, dump(res.report));
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online network design algorithms with tree-embedding checks"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out", g.out, "Output file (default stdout)");
  app.add_option("--trials", g.trials, "Sampled trees or instances per size")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  std::string problem = "SteinerTree", family = "euclidean", instance, algo, trace;
  std::size_t points = 8, requests = 4, dim = 2;
  double density = 0.3;
  ond::GenParams params;
  std::vector<std::size_t> sizes;

  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--problem", problem)->required();
  gen->add_option("--family", family, "euclidean or graph")->capture_default_str();
  gen->add_option("--points", points)->capture_default_str();
  gen->add_option("--requests", requests)->capture_default_str();
  gen->add_option("--M", params.M)->capture_default_str();
  gen->add_option("--rmax", params.r_max)->capture_default_str();
  gen->add_option("--root", params.root)->capture_default_str();
  gen->add_option("--facilities", params.facilities, "Facility count, 0 for every point")->capture_default_str();
  gen->add_option("--facility-cost", params.facility_cost_scale)->capture_default_str();
  gen->add_option("--density", density)->capture_default_str();
  gen->add_option("--dim", dim)->capture_default_str();

  auto* run = app.add_subcommand("run", "Run an online algorithm on an instance");
  run->add_option("--instance", instance)->required();
  run->add_option("--algo", algo, "greedy|bc|sn|srob|mrob|cfl|pcst")->required();
  run->add_option("--trace", trace, "Write the decision trace as JSON lines");

  auto* verify = app.add_subcommand("verify", "Check invariants and per-tree bounds");
  verify->add_option("--instance", instance)->required();
  verify->add_option("--algo", algo)->required();
  verify->add_option("--trace", trace, "Check this trace instead of the algorithm's own");

  auto* ratio = app.add_subcommand("ratio", "Empirical competitive ratios against exact optima");
  ratio->add_option("--family", family, "euclidean or diamond")->capture_default_str();
  ratio->add_option("--problem", problem)->capture_default_str();
  ratio->add_option("--sizes", sizes, "Terminal counts, or depths for diamond")->delimiter(',')->required();

  auto* embed = app.add_subcommand("embed", "Tree embedding distortion report");
  embed->add_option("--instance", instance);
  embed->add_option("--points", points, "Random Euclidean points when no instance is given")->capture_default_str();

  for (auto* sub : {gen, run, verify, ratio, embed}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : ond::kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(g, problem, points, requests, params, family, density, dim);
    if (*run) return cmd_run(g, instance, algo, trace);
    if (*verify) return cmd_verify(g, instance, algo, trace);
    if (*ratio) return cmd_ratio(g, family, problem, sizes);
    if (*embed) return cmd_embed(g, instance, points);
  } catch (const ond::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_cap(e.code()) ? ond::kExitCapExceeded : ond::kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ond::kExitUsage;
  }
  return ond::kExitUsage;
}
