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

#include "avired/bench.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "avired/errors.h"
#include "avired/rng.h"

namespace avired {

AviProblem generate_problem(int n, int m, Distribution dist,
                            std::uint64_t seed, double box_lower,
                            double box_upper) {
  if (n < 1 || m < 0) throw ParameterError("generate_problem: bad sizes");
  if (!(box_lower < box_upper)) {
    throw ParameterError("generate_problem: box_lower < box_upper required");
  }
  GaussianRng rng(seed);
  auto draw = [&]() {
    return dist == Distribution::kGaussian ? rng.normal() : rng.uniform();
  };
  // Fixed fill order: M row-major, then q, then A row-major, then b.
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = draw();
  Eigen::VectorXd q(n);
  for (int i = 0; i < n; ++i) q[i] = draw();
  Eigen::MatrixXd A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = draw();
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) b[i] = draw();
  return make_avi(std::move(M), std::move(q),
                  make_polytope(std::move(A), std::move(b),
                                Eigen::VectorXd::Constant(n, box_lower),
                                Eigen::VectorXd::Constant(n, box_upper)));
}

namespace {

TrialReport run_one_trial(const ExperimentConfig& cfg, const AviProblem& avi,
                          const Eigen::VectorXd& x_bar,
                          const SolveStats& high_stats, int k, int trial) {
  TrialReport tr;
  tr.n = cfg.n;
  tr.m = cfg.m;
  tr.k = k;
  tr.trial_index = trial;
  tr.seed = derive_seed(cfg.base_seed, static_cast<std::uint64_t>(k),
                        static_cast<std::uint64_t>(trial));
  tr.pivots_high = high_stats.pivot_count;
  tr.refactors_high = high_stats.refactorization_count;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (cfg.mode == BenchMode::kExact) {
      HotStartResult hs =
          run_exact_hot_start(avi, cfg.eps, cfg.delta, k, tr.seed);
      tr.natural_map_residual = residual_metric(avi, hs.approx.x_sharp);
      tr.angle_deg = angle_metric(avi, hs.approx.x_sharp).angle_deg;
      tr.difference_norm = difference_norm(hs.approx.x_sharp, x_bar);
      tr.pivots_low = hs.approx.reduced_stats.pivot_count;
      tr.refactors_low = hs.approx.reduced_stats.refactorization_count;
      tr.pivots_additional = hs.warm_stats.pivot_count;
      tr.pivots_total = tr.pivots_low + tr.pivots_additional;
    } else {
      AlgorithmAResult res =
          run_algorithm_a(avi, cfg.eps, cfg.delta, k, tr.seed);
      tr.natural_map_residual = residual_metric(avi, res.x_sharp);
      tr.angle_deg = angle_metric(avi, res.x_sharp).angle_deg;
      tr.difference_norm = difference_norm(res.x_sharp, x_bar);
      tr.pivots_low = res.reduced_stats.pivot_count;
      tr.refactors_low = res.reduced_stats.refactorization_count;
    }
  } catch (const std::exception& e) {
    tr.failed = true;
    tr.failure = e.what();
  }
  if (cfg.record_wall_time) {
    tr.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
  }
  return tr;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, bool parallel) {
  if (cfg.trials < 1) throw ParameterError("run_experiment: trials >= 1");
  if (cfg.k_list.empty()) throw ParameterError("run_experiment: empty k list");
  for (int k : cfg.k_list) {
    if (k < 1 || k > cfg.n) throw ParameterError("run_experiment: k out of range");
  }
#ifdef _OPENMP
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif

  AviProblem avi = generate_problem(cfg.n, cfg.m, cfg.distribution,
                                    cfg.base_seed, cfg.box_lower,
                                    cfg.box_upper);
  // Direct high-dimensional solve, once per problem; its pivot counts repeat
  // down the block.
  AviSolution high = solve_avi(avi);
  if (high.stats.status != SolveStatus::kSolved) {
    throw SolverError(std::string("run_experiment: direct solve failed: ") +
                      to_string(high.stats.status));
  }

  const int nk = static_cast<int>(cfg.k_list.size());
  const int total = nk * cfg.trials;
  ExperimentResult out;
  out.trials.resize(total);

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int idx = 0; idx < total; ++idx) {
      const int k = cfg.k_list[idx / cfg.trials];
      const int t = idx % cfg.trials;
      out.trials[idx] = run_one_trial(cfg, avi, high.x, high.stats, k, t);
    }
  } else {
    for (int idx = 0; idx < total; ++idx) {
      const int k = cfg.k_list[idx / cfg.trials];
      const int t = idx % cfg.trials;
      out.trials[idx] = run_one_trial(cfg, avi, high.x, high.stats, k, t);
    }
  }

  for (int ki = 0; ki < nk; ++ki) {
    AggregateRow row;
    row.n = cfg.n;
    row.m = cfg.m;
    row.k = cfg.k_list[ki];
    row.pivots_high = high.stats.pivot_count;
    row.refactors_high = high.stats.refactorization_count;
    int ok = 0;
    for (int t = 0; t < cfg.trials; ++t) {
      const TrialReport& tr = out.trials[ki * cfg.trials + t];
      if (tr.failed) {
        ++row.failures;
        continue;
      }
      ++ok;
      row.natural_map_residual += tr.natural_map_residual;
      row.angle_deg += tr.angle_deg;
      row.difference_norm += tr.difference_norm;
      row.pivots_low += tr.pivots_low;
      row.refactors_low += tr.refactors_low;
      row.pivots_additional += tr.pivots_additional;
      row.pivots_total += tr.pivots_total;
      row.wall_time_s += tr.wall_time_s;
    }
    if (ok > 0) {
      row.natural_map_residual /= ok;
      row.angle_deg /= ok;
      row.difference_norm /= ok;
      row.pivots_low /= ok;
      row.refactors_low /= ok;
      row.pivots_additional /= ok;
      row.pivots_total /= ok;
      row.wall_time_s /= ok;
    }
    out.aggregates.push_back(row);
  }
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string to_csv(const ExperimentResult& result, bool per_trial) {
  std::ostringstream os;
  os << "n,k,m,natural_map_residual,angle_deg,difference_norm,pivots_low,"
        "refactors_low,pivots_high,refactors_high,pivots_additional,"
        "pivots_total,failures,wall_time_s\n";
  for (const auto& r : result.aggregates) {
    os << r.n << ',' << r.k << ',' << r.m << ',' << fmt(r.natural_map_residual)
       << ',' << fmt(r.angle_deg) << ',' << fmt(r.difference_norm) << ','
       << fmt(r.pivots_low) << ',' << fmt(r.refactors_low) << ','
       << fmt(r.pivots_high) << ',' << fmt(r.refactors_high) << ','
       << fmt(r.pivots_additional) << ',' << fmt(r.pivots_total) << ','
       << r.failures << ',' << fmt(r.wall_time_s) << '\n';
  }
  if (per_trial) {
    os << "# per-trial rows: k,trial,failed,natural_map_residual,angle_deg,"
          "difference_norm,pivots_low,pivots_additional,pivots_total,seed\n";
    for (const auto& t : result.trials) {
      os << "# " << t.k << ',' << t.trial_index << ',' << (t.failed ? 1 : 0)
         << ',' << fmt(t.natural_map_residual) << ',' << fmt(t.angle_deg)
         << ',' << fmt(t.difference_norm) << ',' << t.pivots_low << ','
         << t.pivots_additional << ',' << t.pivots_total << ',' << t.seed
         << '\n';
    }
  }
  return os.str();
}

}  // namespace avired
