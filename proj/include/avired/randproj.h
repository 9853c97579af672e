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

#ifndef AVIRED_RANDPROJ_H_
#define AVIRED_RANDPROJ_H_

#include <cstdint>

#include <Eigen/Core>

namespace avired {

// An n x k matrix with orthonormal columns together with the scale sqrt(n/k)
// that makes y = scale * R^T x an expected-isometry.
struct ProjectionOperator {
  Eigen::MatrixXd R;       // n x k, columns orthonormal
  std::uint64_t seed = 0;  // provenance; 0 when built from explicit data

  int n() const { return static_cast<int>(R.rows()); }
  int k() const { return static_cast<int>(R.cols()); }
  double scale() const { return std::sqrt(static_cast<double>(n()) / k()); }
};

// n x k matrix with i.i.d. N(0, 1/k) entries, filled column-major.
// Deterministic for a given seed. Throws ParameterError unless 1 <= k <= n.
Eigen::MatrixXd sample_gaussian_matrix(int n, int k, std::uint64_t seed);

// Modified Gram-Schmidt with one reorthogonalization pass. Throws
// RankDeficientError if a pivot column norm drops below 1e-12.
ProjectionOperator orthonormalize(const Eigen::MatrixXd& X,
                                  std::uint64_t seed = 0);

// sample_gaussian_matrix followed by orthonormalize, keeping the seed.
ProjectionOperator sample_projection(int n, int k, std::uint64_t seed);

// y = sqrt(n/k) R^T u.
Eigen::VectorXd project_vector(const ProjectionOperator& op,
                               const Eigen::VectorXd& u);

// Column-wise projection of an n x d matrix.
Eigen::MatrixXd project_matrix(const ProjectionOperator& op,
                               const Eigen::MatrixXd& Z);

struct ConcentrationResult {
  double in_band_fraction;  // trials with (1-eps)|u|^2 <= |f(u)|^2 <= (1+eps)|u|^2
  double mean_sq_norm;      // sample mean of |f(u)|^2 (|u| = 1)
};

// Empirical norm-concentration check at u = e1 over independent projection
// samples. Trial t uses seed derive_seed(seed, 0, t); the trial loop runs
// under OpenMP and the result is identical to a serial run.
ConcentrationResult jl_norm_concentration(int n, int k, double eps, int trials,
                                          std::uint64_t seed);

// Fraction of trials with |u'v - f(u)'f(v)| <= eps |u||v| for projections
// sampled at target dimension k.
double jl_inner_product_check(const Eigen::VectorXd& u,
                              const Eigen::VectorXd& v, int k, double eps,
                              int trials, std::uint64_t seed);

}  // namespace avired

#endif  // AVIRED_RANDPROJ_H_
