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

// Compares the OpenMP trial loop against the serial reference path and
// checks that both produce identical CSV output.

#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "avired/bench.h"

namespace {

double time_run(const avired::ExperimentConfig& cfg, bool parallel,
                std::string* csv) {
  const auto t0 = std::chrono::steady_clock::now();
  avired::ExperimentResult r = avired::run_experiment(cfg, parallel);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  *csv = avired::to_csv(r);
  return secs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP comparison for the experiment runner"};
  avired::ExperimentConfig cfg;
  cfg.n = 20;
  cfg.m = 4;
  cfg.k_list = {2, 6, 10, 14, 18};
  cfg.trials = 10;
  cfg.base_seed = 1;
  app.add_option("--n", cfg.n, "problem dimension");
  app.add_option("--m", cfg.m, "extra inequality rows");
  app.add_option("--k-list", cfg.k_list, "lower dimensions")->delimiter(',');
  app.add_option("--trials", cfg.trials, "trials per k");
  app.add_option("--seed", cfg.base_seed, "base seed");
  app.add_option("--threads", cfg.threads, "OpenMP thread count (0 = default)");
  CLI11_PARSE(app, argc, argv);

  std::string serial_csv, parallel_csv;
  const double t_serial = time_run(cfg, /*parallel=*/false, &serial_csv);
  const double t_parallel = time_run(cfg, /*parallel=*/true, &parallel_csv);

  std::printf("serial:   %.3f s\n", t_serial);
  std::printf("parallel: %.3f s\n", t_parallel);
  std::printf("speedup:  %.2fx\n", t_serial / t_parallel);
  if (serial_csv != parallel_csv) {
    std::printf("MISMATCH: serial and parallel CSV outputs differ\n");
    return 1;
  }
  std::printf("outputs identical\n");
  return 0;
}
