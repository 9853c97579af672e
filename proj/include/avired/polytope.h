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

#ifndef AVIRED_POLYTOPE_H_
#define AVIRED_POLYTOPE_H_

#include <utility>
#include <vector>

#include <Eigen/Core>

namespace avired {

// K = {x : Ax <= b, lower <= x <= upper}. Finite box bounds make K compact.
// Feasibility is not checked at construction.
struct Polytope {
  Eigen::MatrixXd A;  // m x n (m may be 0)
  Eigen::VectorXd b;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  int dim() const { return static_cast<int>(lower.size()); }
  int rows() const { return static_cast<int>(b.size()); }
};

// Validating constructor; throws DimensionError on inconsistent sizes or
// lower > upper.
Polytope make_polytope(Eigen::MatrixXd A, Eigen::VectorXd b,
                       Eigen::VectorXd lower, Eigen::VectorXd upper);

// Axis-aligned box [lower, upper]^n with no extra rows.
Polytope make_box(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper);

struct VertexSet {
  std::vector<Eigen::VectorXd> vertices;
  int count() const { return static_cast<int>(vertices.size()); }
};

bool contains(const Polytope& K, const Eigen::VectorXd& x, double tol);

// argmin_{z in K} |x - z|^2. Delegates to solve_convex_qp; for a pure box
// this is componentwise clamping.
Eigen::VectorXd euclidean_project(const Polytope& K, const Eigen::VectorXd& x);

// min c'y over K, solved as an LP; returns (value, vertex minimizer).
std::pair<double, Eigen::VectorXd> support_min(const Polytope& K,
                                               const Eigen::VectorXd& c);

// Exact vertex enumeration over all n-subsets of active rows (A plus bound
// rows). Test-oracle path, gated at dim <= max_dim.
VertexSet enumerate_vertices(const Polytope& K, int max_dim = 8);

// Upper bounds on diameter D = max |x1 - x2| and radius B = max |x| over K.
// Exact (from vertex enumeration) when dim <= 8 and K is nonempty, otherwise
// bounding-box bounds. Either value keeps the epsilon-hat certificate sound.
std::pair<double, double> diameter_and_radius(const Polytope& K);

// Upper bound on max |x|_1 over K.
double l1_radius(const Polytope& K);

// ln of the basis-count bound on |ext(K)|: after standard-form conversion
// (one slack per inequality row, lower bounds folded into nonnegativity)
// the bound is C(m_total, n). m_total counts all inequality rows including
// the 2n bound rows. Computed via lgamma; clamped to 0 when ill-posed.
double log_vertex_bound(int n, int m_total);

}  // namespace avired

#endif  // AVIRED_POLYTOPE_H_
