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

#ifndef AVIRED_BENCH_H_
#define AVIRED_BENCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "avired/avi.h"
#include "avired/pipeline.h"

namespace avired {

enum class Distribution { kGaussian, kUniform };

enum class BenchMode { kApprox, kExact };

struct ExperimentConfig {
  int n = 20;
  int m = 4;
  std::vector<int> k_list;
  Distribution distribution = Distribution::kGaussian;
  int trials = 10;
  std::uint64_t base_seed = 1;
  double box_lower = -100.0;
  double box_upper = 100.0;
  BenchMode mode = BenchMode::kApprox;
  double eps = 0.5;
  double delta = 0.1;
  // Measured wall times make the CSV non-reproducible run to run; they are
  // emitted as 0 unless explicitly requested.
  bool record_wall_time = false;
  int threads = 0;  // 0 = OpenMP default
};

struct TrialReport {
  int n = 0, k = 0, m = 0;
  int trial_index = 0;
  bool failed = false;
  std::string failure;
  double natural_map_residual = 0.0;
  double angle_deg = 0.0;
  double difference_norm = 0.0;
  long pivots_low = 0, refactors_low = 0;
  long pivots_high = 0, refactors_high = 0;
  long pivots_additional = 0, pivots_total = 0;  // exact mode only
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
};

struct AggregateRow {
  int n = 0, k = 0, m = 0;
  double natural_map_residual = 0.0;
  double angle_deg = 0.0;
  double difference_norm = 0.0;
  double pivots_low = 0.0, refactors_low = 0.0;
  double pivots_high = 0.0, refactors_high = 0.0;
  double pivots_additional = 0.0, pivots_total = 0.0;
  int failures = 0;
  double wall_time_s = 0.0;
};

struct ExperimentResult {
  std::vector<TrialReport> trials;     // sorted by (k, trial_index)
  std::vector<AggregateRow> aggregates;  // one per k
};

// Random instance with M (row-major fill), then q, then A (row-major),
// then b, all i.i.d. from the named distribution; box bounds from config.
AviProblem generate_problem(int n, int m, Distribution dist,
                            std::uint64_t seed, double box_lower,
                            double box_upper);

// Runs trials x k_list pipeline runs against one fixed problem per config.
// The direct high-dimensional solve is performed once and cached, so the
// pivots_high column is constant down a block. Trials run under OpenMP with
// per-trial derived seeds; set parallel = false for the serial reference
// (output is identical either way).
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                bool parallel = true);

// CSV with the fixed header
// n,k,m,natural_map_residual,angle_deg,difference_norm,pivots_low,
// refactors_low,pivots_high,refactors_high,pivots_additional,pivots_total,
// failures,wall_time_s
std::string to_csv(const ExperimentResult& result, bool per_trial = false);

}  // namespace avired

#endif  // AVIRED_BENCH_H_
