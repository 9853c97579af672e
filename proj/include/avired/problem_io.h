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

#ifndef AVIRED_PROBLEM_IO_H_
#define AVIRED_PROBLEM_IO_H_

#include <iosfwd>
#include <optional>
#include <string>

#include "avired/avi.h"

namespace avired {

// Line-oriented problem file:
//   avi-problem 1
//   n <int>
//   m <int>
//   M        (n*n values, row-major, whitespace separated)
//   q        (n values)
//   A        (m*n values, row-major; section present even when m = 0)
//   b        (m values)
//   lower    (n values)
//   upper    (n values)
//   reference_solution   (optional, n values)
// Values are written with 17 significant digits so a write/read round trip
// is exact. NaN and infinities are rejected.
struct ProblemFile {
  AviProblem problem;
  std::optional<Eigen::VectorXd> reference_solution;
};

struct ParseError : std::runtime_error {
  ParseError(int line_number, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_number) + ": " +
                           message),
        line(line_number) {}
  int line;
};

ProblemFile read_problem(std::istream& in);
ProblemFile read_problem_file(const std::string& path);

void write_problem(std::ostream& out, const ProblemFile& pf);
void write_problem_file(const std::string& path, const ProblemFile& pf);

}  // namespace avired

#endif  // AVIRED_PROBLEM_IO_H_
