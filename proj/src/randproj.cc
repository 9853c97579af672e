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

#include "avired/randproj.h"

#include <cmath>

#include "avired/errors.h"
#include "avired/rng.h"

namespace avired {

namespace {
constexpr double kRankTol = 1e-12;
}

Eigen::MatrixXd sample_gaussian_matrix(int n, int k, std::uint64_t seed) {
  if (k < 1 || k > n) {
    throw ParameterError("sample_gaussian_matrix: need 1 <= k <= n, got k=" +
                         std::to_string(k) + ", n=" + std::to_string(n));
  }
  GaussianRng rng(seed);
  const double sigma = 1.0 / std::sqrt(static_cast<double>(k));
  Eigen::MatrixXd X(n, k);
  // Column-major fill; part of the reproducibility contract.
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < n; ++i) {
      X(i, j) = sigma * rng.normal();
    }
  }
  return X;
}

ProjectionOperator orthonormalize(const Eigen::MatrixXd& X,
                                  std::uint64_t seed) {
  const int n = static_cast<int>(X.rows());
  const int k = static_cast<int>(X.cols());
  if (k < 1 || k > n) {
    throw ParameterError("orthonormalize: need 1 <= cols <= rows");
  }
  Eigen::MatrixXd R = X;
  // Modified Gram-Schmidt; classical GS loses orthogonality for n in the
  // hundreds, and one reorthogonalization pass restores it to round-off.
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < j; ++i) {
        R.col(j) -= R.col(i).dot(R.col(j)) * R.col(i);
      }
      const double norm = R.col(j).norm();
      if (norm < kRankTol) {
        throw RankDeficientError("orthonormalize: pivot column " +
                                 std::to_string(j) + " norm " +
                                 std::to_string(norm) + " below tolerance");
      }
      R.col(j) /= norm;
    }
  }
  return ProjectionOperator{std::move(R), seed};
}

ProjectionOperator sample_projection(int n, int k, std::uint64_t seed) {
  return orthonormalize(sample_gaussian_matrix(n, k, seed), seed);
}

Eigen::VectorXd project_vector(const ProjectionOperator& op,
                               const Eigen::VectorXd& u) {
  if (u.size() != op.n()) {
    throw DimensionError("project_vector: vector length " +
                         std::to_string(u.size()) + " != n " +
                         std::to_string(op.n()));
  }
  return op.scale() * (op.R.transpose() * u);
}

Eigen::MatrixXd project_matrix(const ProjectionOperator& op,
                               const Eigen::MatrixXd& Z) {
  if (Z.rows() != op.n()) {
    throw DimensionError("project_matrix: row count mismatch");
  }
  return op.scale() * (op.R.transpose() * Z);
}

ConcentrationResult jl_norm_concentration(int n, int k, double eps, int trials,
                                          std::uint64_t seed) {
  if (trials < 1) throw ParameterError("jl_norm_concentration: trials >= 1");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ParameterError("jl_norm_concentration: eps in (0,1)");
  }
  // u = e1; the distribution of |f(u)| is invariant to the choice of unit u.
  long in_band = 0;
  double sum_sq = 0.0;
#pragma omp parallel for reduction(+ : in_band, sum_sq) schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    ProjectionOperator op = sample_projection(n, k, derive_seed(seed, 0, t));
    const double sq = op.scale() * op.scale() * op.R.row(0).squaredNorm();
    if (sq >= 1.0 - eps && sq <= 1.0 + eps) ++in_band;
    sum_sq += sq;
  }
  return {static_cast<double>(in_band) / trials, sum_sq / trials};
}

double jl_inner_product_check(const Eigen::VectorXd& u,
                              const Eigen::VectorXd& v, int k, double eps,
                              int trials, std::uint64_t seed) {
  if (u.size() != v.size()) {
    throw DimensionError("jl_inner_product_check: length mismatch");
  }
  if (trials < 1) throw ParameterError("jl_inner_product_check: trials >= 1");
  const int n = static_cast<int>(u.size());
  const double exact = u.dot(v);
  const double bound_scale = u.norm() * v.norm();
  long hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    // Same trial-seed derivation as the norm check but a distinct stream id.
    ProjectionOperator op = sample_projection(n, k, derive_seed(seed, 1, t));
    const Eigen::VectorXd fu = project_vector(op, u);
    const Eigen::VectorXd fv = project_vector(op, v);
    if (std::abs(exact - fu.dot(fv)) <= eps * bound_scale) ++hits;
  }
  return static_cast<double>(hits) / trials;
}

}  // namespace avired
