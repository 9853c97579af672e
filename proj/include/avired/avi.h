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

#ifndef AVIRED_AVI_H_
#define AVIRED_AVI_H_

#include <tuple>

#include <Eigen/Core>

#include "avired/polytope.h"

namespace avired {

// AVI(K, M, q): find x in K with (y - x)'(Mx + q) >= 0 for all y in K.
// No monotonicity or symmetry is assumed on M.
struct AviProblem {
  Eigen::MatrixXd M;  // n x n
  Eigen::VectorXd q;
  Polytope K;

  int dim() const { return K.dim(); }
};

AviProblem make_avi(Eigen::MatrixXd M, Eigen::VectorXd q, Polytope K);

struct QualityReport {
  double natural_map_residual = 0.0;
  double angle_deg = 0.0;
  double beta = 0.0;
  bool has_difference_norm = false;
  double difference_norm = 0.0;
};

// F_nat(x) = x - Pi_K(x - (Mx + q)); zero exactly at solutions.
Eigen::VectorXd natural_map(const AviProblem& avi, const Eigen::VectorXd& x);

// |F_nat(x)| / (|x| + 1).
double residual_metric(const AviProblem& avi, const Eigen::VectorXd& x);

struct AngleResult {
  double angle_deg;
  double beta;
  Eigen::VectorXd y_star;
};

// Largest angle between q + Mx and directions y - x over K, via
// beta = min_{y in K} (y - x)'(q + Mx). Degenerate (zero-length) cases
// report 90 degrees.
AngleResult angle_metric(const AviProblem& avi, const Eigen::VectorXd& x);

// |x_candidate - x_reference| / (|x_reference| + 1).
double difference_norm(const Eigen::VectorXd& x_candidate,
                       const Eigen::VectorXd& x_reference);

struct VertexCheck {
  bool is_solution;
  double worst_violation;  // min over vertices of (x_e - x)'(q + Mx)
  Eigen::VectorXd worst_vertex;
};

// Finite reformulation of the VI over ext(K); exact on small instances.
VertexCheck verify_by_vertices(const AviProblem& avi, const Eigen::VectorXd& x,
                               double tol);

// l2-induced norm of M, power iteration on M'M (1e-8 relative, 10k cap).
double operator_norm(const Eigen::MatrixXd& M);

// The (nonpositive) approximation bound
//   -((eps^2/2 - eps^3/3) n / (2 ln(4 eta / delta))) |M| B
//   - eps D |q| - eps D |M| B
// with D, B taken from diameter_and_radius.
double epsilon_hat(const AviProblem& avi, double eps, double delta,
                   double ln_eta);

struct LowerDimension {
  int k;
  bool clamped;  // true when the unclamped bound exceeded n
};

// Smallest k with k >= 2 ln(4 eta / delta) / (eps^2/2 - eps^3/3),
// clamped to [1, n].
LowerDimension min_lower_dimension(double ln_eta, double eps, double delta,
                                   int n);

}  // namespace avired

#endif  // AVIRED_AVI_H_
