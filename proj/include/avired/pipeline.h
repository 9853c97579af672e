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

#ifndef AVIRED_PIPELINE_H_
#define AVIRED_PIPELINE_H_

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "avired/avi.h"
#include "avired/randproj.h"
#include "avired/solvers.h"

namespace avired {

// The augmented sparse reformulation of the reduced AVI in the variable
// v = (x_tilde, x) in R^(k+n):
//   M_hat = [[M_tilde, 0], [0, 0]],  q_hat = (q_tilde, 0),
//   C v = 0 with C = [I | -sqrt(n/k) R'],  D v <= b with D = [0 | A],
// plus the original box on the x-block and an enclosing interval box on the
// x_tilde-block.
struct ReducedProblem {
  Eigen::MatrixXd M_tilde;  // k x k, R' M R
  Eigen::VectorXd q_tilde;  // sqrt(n/k) R' q
  Eigen::MatrixXd M_hat;    // (k+n) x (k+n)
  Eigen::VectorXd q_hat;
  Eigen::MatrixXd C;  // k x (k+n) equality block
  Eigen::MatrixXd D;  // m x (k+n)
  Eigen::VectorXd b;
  Eigen::VectorXd v_lower;
  Eigen::VectorXd v_upper;
  ProjectionOperator op;
  AviProblem original;

  int k() const { return static_cast<int>(M_tilde.rows()); }
  int n() const { return original.dim(); }
};

ReducedProblem build_reduced(const AviProblem& avi,
                             const ProjectionOperator& op);

// Solve the augmented AVI. The x_tilde block is eliminated symbolically
// (x_tilde = sqrt(n/k) R' x on the feasible set), so the LCP handed to the
// pivoting solver has dimension governed by n, not n + k. Returns the
// x_tilde block; the x companion is one preimage, not the recovery target.
struct ReducedSolution {
  Eigen::VectorXd x_tilde;
  SolveStats stats;
};

ReducedSolution solve_reduced(const ReducedProblem& rp,
                              const AviOptions& options = {});

struct AlgorithmAResult {
  Eigen::VectorXd x_sharp;  // final output, projected onto K
  Eigen::VectorXd x_star;   // l1 recovery output
  Eigen::VectorXd x_tilde;  // reduced solution
  int k_used = 0;
  bool k_clamped = false;
  double eps = 0.0;
  double delta = 0.0;
  double ln_eta = 0.0;
  double epsilon_hat = 0.0;
  SolveStats reduced_stats;
  SolveStats recovery_stats;
  std::uint64_t seed = 0;
};

// The full reduction pipeline: pick k (unless overridden), sample the
// projection, build and solve the reduced AVI, recover by l1 minimization,
// project onto K. Deterministic given the seed. Stage failures raise
// PipelineError tagged with the stage name.
AlgorithmAResult run_algorithm_a(const AviProblem& avi, double eps,
                                 double delta, std::optional<int> k_override,
                                 std::uint64_t seed);

struct HotStartResult {
  AlgorithmAResult approx;
  Eigen::VectorXd x_exact;  // warm-start exact solution
  SolveStats cold_stats;
  SolveStats warm_stats;
};

// Approximate run followed by a warm exact solve crashed from x_sharp and an
// independent cold exact solve, for iteration-count comparison.
HotStartResult run_exact_hot_start(const AviProblem& avi, double eps,
                                   double delta, std::optional<int> k_override,
                                   std::uint64_t seed);

struct CertificateResult {
  double min_vertex_inner_product;
  double epsilon_hat;
  bool satisfied;
};

// Evaluates min over ext(K) of (x_e - x_sharp)'(q + M x_sharp) against the
// epsilon-hat bound. x_sharp stands in for the non-computable deterministic
// preimage; requires the vertex-enumeration gate.
CertificateResult theorem1_certificate(const AviProblem& avi,
                                       const AlgorithmAResult& result);

}  // namespace avired

#endif  // AVIRED_PIPELINE_H_
