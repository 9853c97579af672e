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

#include "avired/avi.h"

#include <algorithm>
#include <cmath>

#include "avired/errors.h"
#include "avired/rng.h"

namespace avired {

namespace {
constexpr double kDegenerateTol = 1e-12;
}

AviProblem make_avi(Eigen::MatrixXd M, Eigen::VectorXd q, Polytope K) {
  const int n = K.dim();
  if (M.rows() != n || M.cols() != n || q.size() != n) {
    throw DimensionError("make_avi: M/q dimensions inconsistent with K");
  }
  return AviProblem{std::move(M), std::move(q), std::move(K)};
}

Eigen::VectorXd natural_map(const AviProblem& avi, const Eigen::VectorXd& x) {
  if (x.size() != avi.dim()) throw DimensionError("natural_map: size mismatch");
  if (!x.allFinite()) throw ParameterError("natural_map: x must be finite");
  Eigen::VectorXd inner = x - (avi.M * x + avi.q);
  return x - euclidean_project(avi.K, inner);
}

double residual_metric(const AviProblem& avi, const Eigen::VectorXd& x) {
  return natural_map(avi, x).norm() / (x.norm() + 1.0);
}

AngleResult angle_metric(const AviProblem& avi, const Eigen::VectorXd& x) {
  Eigen::VectorXd c = avi.q + avi.M * x;
  auto [value, y_star] = support_min(avi.K, c);
  const double beta = value - c.dot(x);  // min over K of (y - x)'c
  const double denom = (y_star - x).norm() * c.norm();
  double angle = 90.0;
  if (c.norm() > kDegenerateTol && (y_star - x).norm() > kDegenerateTol) {
    double cosine = beta / denom;
    cosine = std::clamp(cosine, -1.0, 1.0);
    angle = std::acos(cosine) * 180.0 / M_PI;
  }
  return AngleResult{angle, beta, std::move(y_star)};
}

double difference_norm(const Eigen::VectorXd& x_candidate,
                       const Eigen::VectorXd& x_reference) {
  if (x_candidate.size() != x_reference.size()) {
    throw DimensionError("difference_norm: size mismatch");
  }
  return (x_candidate - x_reference).norm() / (x_reference.norm() + 1.0);
}

VertexCheck verify_by_vertices(const AviProblem& avi, const Eigen::VectorXd& x,
                               double tol) {
  VertexSet vs = enumerate_vertices(avi.K);
  Eigen::VectorXd c = avi.q + avi.M * x;
  double worst = std::numeric_limits<double>::infinity();
  Eigen::VectorXd worst_vertex = vs.vertices.front();
  for (const auto& v : vs.vertices) {
    const double ip = (v - x).dot(c);
    if (ip < worst) {
      worst = ip;
      worst_vertex = v;
    }
  }
  return VertexCheck{worst >= -tol, worst, std::move(worst_vertex)};
}

double operator_norm(const Eigen::MatrixXd& M) {
  const int n = static_cast<int>(M.cols());
  if (n == 0) return 0.0;
  // Power iteration on M'M; adequate for a bound, no SVD dependency.
  GaussianRng rng(0x9E3779B9ULL);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.normal();
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd w = M.transpose() * (M * v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    w /= norm;
    const double next = w.dot(M.transpose() * (M * w));
    if (std::abs(next - lambda) <= 1e-8 * std::max(1.0, std::abs(next))) {
      lambda = next;
      break;
    }
    lambda = next;
    v = w;
  }
  return std::sqrt(std::max(0.0, lambda));
}

double epsilon_hat(const AviProblem& avi, double eps, double delta,
                   double ln_eta) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("epsilon_hat: eps");
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("epsilon_hat: delta");
  if (!(ln_eta > 0.0)) throw ParameterError("epsilon_hat: ln_eta must be > 0");
  const double m_norm = operator_norm(avi.M);
  auto [D, B] = diameter_and_radius(avi.K);
  const double n = static_cast<double>(avi.dim());
  const double log_term = std::log(4.0) + ln_eta - std::log(delta);
  const double coeff = (eps * eps / 2.0 - eps * eps * eps / 3.0) * n /
                       (2.0 * log_term);
  return -coeff * m_norm * B - eps * D * avi.q.norm() - eps * D * m_norm * B;
}

LowerDimension min_lower_dimension(double ln_eta, double eps, double delta,
                                   int n) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("min_lower_dimension: eps");
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw ParameterError("min_lower_dimension: delta");
  }
  const double log_term = std::log(4.0) + ln_eta - std::log(delta);
  const double denom = eps * eps / 2.0 - eps * eps * eps / 3.0;
  const double raw = 2.0 * log_term / denom;
  long k = static_cast<long>(std::ceil(raw - 1e-12));
  k = std::max(k, 1L);
  if (k > n) return LowerDimension{n, true};
  return LowerDimension{static_cast<int>(k), false};
}

}  // namespace avired
