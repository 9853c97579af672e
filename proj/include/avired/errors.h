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

#ifndef AVIRED_ERRORS_H_
#define AVIRED_ERRORS_H_

#include <stdexcept>
#include <string>

namespace avired {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Pivot column norm fell below tolerance during orthonormalization.
struct RankDeficientError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionTooLargeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Failure inside the reduction pipeline, tagged with the stage that raised
// it so a failing (problem, seed) pair can be replayed.
struct PipelineError : std::runtime_error {
  PipelineError(std::string stage_name, const std::string& message)
      : std::runtime_error("[" + stage_name + "] " + message),
        stage(std::move(stage_name)) {}
  std::string stage;
};

}  // namespace avired

#endif  // AVIRED_ERRORS_H_
