// Copyright 2026 The avired Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: solve (direct), reduce (dimension-reduction
// pipeline), bench (experiment sweeps to CSV).
//
// Exit codes: 0 solved, 2 parse/flag error, 3 infeasible, 4 solver failure,
// 5 pipeline stage failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "avired/avi.h"
#include "avired/bench.h"
#include "avired/errors.h"
#include "avired/pipeline.h"
#include "avired/problem_io.h"
#include "avired/solvers.h"

namespace {

using nlohmann::json;

constexpr int kExitSolved = 0;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitSolver = 4;
constexpr int kExitPipeline = 5;

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json stats_to_json(const avired::SolveStats& s) {
  return json{{"pivot_count", s.pivot_count},
              {"refactorization_count", s.refactorization_count},
              {"status", avired::to_string(s.status)},
              {"used_cold_fallback", s.used_cold_fallback}};
}

void print_vector(std::ostream& os, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << v[i];
  }
  os << '\n';
}

bool write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return false;
  }
  out << content;
  return true;
}

int run_solve(const std::string& problem_path, const std::string& out_path,
              int max_pivots) {
  avired::ProblemFile pf;
  try {
    pf = avired::read_problem_file(problem_path);
  } catch (const avired::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  }
  if (!avired::contains(pf.problem.K, pf.problem.K.lower, 0.0)) {
    // lower violates a row: a quick necessary feasibility probe is not
    // conclusive, so fall through to the solver, which certifies emptiness.
  }
  avired::AviOptions opts;
  opts.max_pivots = max_pivots;
  avired::AviSolution sol;
  try {
    sol = avired::solve_avi(pf.problem, opts);
  } catch (const avired::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
  if (sol.stats.status == avired::SolveStatus::kInfeasible) {
    std::cerr << "infeasible: feasible set is empty\n";
    return kExitInfeasible;
  }
  if (sol.stats.status != avired::SolveStatus::kSolved) {
    std::cerr << "solver failure: " << avired::to_string(sol.stats.status)
              << " after " << sol.stats.pivot_count << " pivots\n";
    return kExitSolver;
  }
  const double residual = avired::residual_metric(pf.problem, sol.x);
  std::cout << "x: ";
  print_vector(std::cout, sol.x);
  std::cout << "natural_map_residual: " << residual << '\n'
            << "pivots: " << sol.stats.pivot_count << '\n'
            << "refactorizations: " << sol.stats.refactorization_count << '\n';
  if (pf.reference_solution) {
    std::cout << "difference_norm_vs_reference: "
              << avired::difference_norm(sol.x, *pf.reference_solution)
              << '\n';
  }
  if (!out_path.empty()) {
    avired::ProblemFile out_pf = pf;
    out_pf.reference_solution = sol.x;
    try {
      avired::write_problem_file(out_path, out_pf);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitSolver;
    }
  }
  return kExitSolved;
}

int run_reduce(const std::string& problem_path, double eps, double delta,
               std::optional<int> k, std::uint64_t seed,
               const std::string& mode, const std::string& out_path) {
  avired::ProblemFile pf;
  try {
    pf = avired::read_problem_file(problem_path);
  } catch (const avired::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  }
  json report;
  try {
    avired::AlgorithmAResult res;
    if (mode == "exact") {
      avired::HotStartResult hs =
          avired::run_exact_hot_start(pf.problem, eps, delta, k, seed);
      res = hs.approx;
      report["exact"] = {
          {"x_exact", vector_to_json(hs.x_exact)},
          {"cold", stats_to_json(hs.cold_stats)},
          {"warm", stats_to_json(hs.warm_stats)},
          {"exact_residual",
           avired::residual_metric(pf.problem, hs.x_exact)}};
    } else {
      res = avired::run_algorithm_a(pf.problem, eps, delta, k, seed);
    }
    avired::AngleResult angle = avired::angle_metric(pf.problem, res.x_sharp);
    report["x_sharp"] = vector_to_json(res.x_sharp);
    report["x_star"] = vector_to_json(res.x_star);
    report["x_tilde"] = vector_to_json(res.x_tilde);
    report["k_used"] = res.k_used;
    report["k_clamped"] = res.k_clamped;
    report["eps"] = res.eps;
    report["delta"] = res.delta;
    report["ln_eta"] = res.ln_eta;
    report["epsilon_hat"] = res.epsilon_hat;
    report["seed"] = res.seed;
    report["reduced_stats"] = stats_to_json(res.reduced_stats);
    report["recovery_stats"] = stats_to_json(res.recovery_stats);
    report["quality"] = {
        {"natural_map_residual",
         avired::residual_metric(pf.problem, res.x_sharp)},
        {"angle_deg", angle.angle_deg},
        {"beta", angle.beta}};
    if (pf.reference_solution) {
      report["quality"]["difference_norm_vs_reference"] =
          avired::difference_norm(res.x_sharp, *pf.reference_solution);
    }
    std::cout << "k_used: " << res.k_used
              << (res.k_clamped ? " (clamped to n)" : "") << '\n'
              << "ln_eta: " << res.ln_eta << '\n'
              << "epsilon_hat: " << res.epsilon_hat << '\n'
              << "natural_map_residual: "
              << report["quality"]["natural_map_residual"].get<double>()
              << '\n';
    if (mode == "exact") {
      std::cout << "cold_pivots: "
                << report["exact"]["cold"]["pivot_count"].get<int>() << '\n'
                << "warm_pivots: "
                << report["exact"]["warm"]["pivot_count"].get<int>() << '\n';
    }
  } catch (const avired::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitParse;
  } catch (const avired::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const avired::PipelineError& e) {
    std::cerr << "pipeline failure at stage '" << e.stage << "': " << e.what()
              << '\n';
    return kExitPipeline;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
  if (!out_path.empty() && !write_text(out_path, report.dump(2) + "\n")) {
    return kExitSolver;
  }
  return kExitSolved;
}

int run_bench(const avired::ExperimentConfig& cfg, const std::string& out_path,
              bool per_trial) {
  avired::ExperimentResult result;
  try {
    result = avired::run_experiment(cfg);
  } catch (const avired::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
  const std::string csv = avired::to_csv(result, per_trial);
  if (out_path.empty()) {
    std::cout << csv;
  } else if (!write_text(out_path, csv)) {
    return kExitSolver;
  }
  return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine variational inequality reduction toolkit"};
  app.require_subcommand(1);

  // solve
  std::string solve_path, solve_out;
  int solve_max_pivots = 20000;
  CLI::App* solve = app.add_subcommand("solve", "Direct solve of a problem file");
  solve->add_option("problem", solve_path, "problem file path")->required();
  solve->add_option("--out", solve_out,
                    "write the instance plus solution to this path");
  solve->add_option("--max-pivots", solve_max_pivots, "pivot budget");

  // reduce
  std::string reduce_path, reduce_out, reduce_mode = "approx";
  double reduce_eps = 0.5, reduce_delta = 0.1;
  int reduce_k = -1;
  std::uint64_t reduce_seed = 1;
  CLI::App* reduce =
      app.add_subcommand("reduce", "Randomized dimension-reduction run");
  reduce->add_option("problem", reduce_path, "problem file path")->required();
  reduce->add_option("--eps", reduce_eps, "distortion parameter in (0, 1)");
  reduce->add_option("--delta", reduce_delta, "failure probability in (0, 1)");
  reduce->add_option("--k", reduce_k,
                     "lower dimension (default: from the dimension rule)");
  reduce->add_option("--seed", reduce_seed, "random seed");
  reduce->add_option("--mode", reduce_mode, "approx | exact")
      ->check(CLI::IsMember({"approx", "exact"}));
  reduce->add_option("--out", reduce_out, "write a JSON report to this path");

  // bench
  avired::ExperimentConfig cfg;
  std::string bench_out, bench_dist = "gauss", bench_mode = "approx";
  std::vector<int> bench_k_list;
  bool bench_per_trial = false, bench_time = false;
  CLI::App* bench = app.add_subcommand("bench", "Experiment sweep to CSV");
  bench->add_option("--n", cfg.n, "problem dimension")->required();
  bench->add_option("--m", cfg.m, "extra inequality rows")->required();
  bench->add_option("--k-list", bench_k_list, "lower dimensions to sweep")
      ->required()
      ->delimiter(',');
  bench->add_option("--dist", bench_dist, "gauss | uniform")
      ->check(CLI::IsMember({"gauss", "uniform"}));
  bench->add_option("--trials", cfg.trials, "trials per k");
  bench->add_option("--seed", cfg.base_seed, "base seed");
  bench->add_option("--mode", bench_mode, "approx | exact")
      ->check(CLI::IsMember({"approx", "exact"}));
  bench->add_option("--eps", cfg.eps, "distortion parameter");
  bench->add_option("--delta", cfg.delta, "failure probability");
  bench->add_option("--box", [&cfg](const std::vector<std::string>& vals) {
    cfg.box_lower = std::stod(vals.at(0));
    cfg.box_upper = std::stod(vals.at(1));
    return true;
  }, "box bounds: lower upper")->expected(2);
  bench->add_option("--out", bench_out, "CSV output path");
  bench->add_flag("--per-trial", bench_per_trial,
                  "append raw per-trial rows as comments");
  bench->add_flag("--time", bench_time,
                  "record wall times (breaks byte-identical reruns)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  if (solve->parsed()) {
    return run_solve(solve_path, solve_out, solve_max_pivots);
  }
  if (reduce->parsed()) {
    std::optional<int> k;
    if (reduce_k >= 0) k = reduce_k;
    return run_reduce(reduce_path, reduce_eps, reduce_delta, k, reduce_seed,
                      reduce_mode, reduce_out);
  }
  cfg.k_list = bench_k_list;
  cfg.distribution = bench_dist == "uniform" ? avired::Distribution::kUniform
                                             : avired::Distribution::kGaussian;
  cfg.mode = bench_mode == "exact" ? avired::BenchMode::kExact
                                   : avired::BenchMode::kApprox;
  cfg.record_wall_time = bench_time;
  if (const char* env = std::getenv("AVIRED_THREADS")) {
    cfg.threads = std::atoi(env);
  }
  return run_bench(cfg, bench_out, bench_per_trial);
}
