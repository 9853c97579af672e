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

#include "avired/pipeline.h"

#include <cmath>

#include "avired/errors.h"

namespace avired {

namespace {

double box_radius_of(const Polytope& K) {
  return std::max(K.lower.cwiseAbs().maxCoeff(),
                  K.upper.cwiseAbs().maxCoeff());
}

double default_ln_eta(const AviProblem& avi) {
  const int n = avi.dim();
  if (n <= 8) {
    try {
      VertexSet vs = enumerate_vertices(avi.K);
      if (vs.count() > 1) return std::log(static_cast<double>(vs.count()));
    } catch (const InfeasibleError&) {
    }
  }
  return std::max(log_vertex_bound(n, avi.K.rows() + 2 * n),
                  std::log(2.0));  // keep ln_eta strictly positive
}

}  // namespace

ReducedProblem build_reduced(const AviProblem& avi,
                             const ProjectionOperator& op) {
  const int n = avi.dim();
  const int k = op.k();
  const int m = avi.K.rows();
  if (op.n() != n) throw DimensionError("build_reduced: projection n mismatch");

  ReducedProblem rp{.op = op, .original = avi};
  const double scale = op.scale();
  Eigen::MatrixXd Rt = op.R.transpose();

  rp.M_tilde = Rt * avi.M * op.R;
  rp.q_tilde = scale * (Rt * avi.q);

  rp.M_hat = Eigen::MatrixXd::Zero(k + n, k + n);
  rp.M_hat.topLeftCorner(k, k) = rp.M_tilde;
  rp.q_hat = Eigen::VectorXd::Zero(k + n);
  rp.q_hat.head(k) = rp.q_tilde;

  // Equality block carries the sqrt(n/k) scale so the x_tilde-block feasible
  // set is exactly the projected polytope.
  rp.C = Eigen::MatrixXd::Zero(k, k + n);
  rp.C.leftCols(k) = Eigen::MatrixXd::Identity(k, k);
  rp.C.rightCols(n) = -scale * Rt;

  rp.D = Eigen::MatrixXd::Zero(m, k + n);
  if (m > 0) rp.D.rightCols(n) = avi.K.A;
  rp.b = avi.K.b;

  // Enclosing box for the x_tilde block by interval arithmetic over
  // scale * R' [L, U]; valid and never cuts the projected set.
  Eigen::VectorXd t_lo(k), t_hi(k);
  for (int i = 0; i < k; ++i) {
    double lo = 0.0, hi = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = scale * Rt(i, j);
      if (a >= 0.0) {
        lo += a * avi.K.lower[j];
        hi += a * avi.K.upper[j];
      } else {
        lo += a * avi.K.upper[j];
        hi += a * avi.K.lower[j];
      }
    }
    t_lo[i] = lo;
    t_hi[i] = hi;
  }
  rp.v_lower.resize(k + n);
  rp.v_upper.resize(k + n);
  rp.v_lower << t_lo, avi.K.lower;
  rp.v_upper << t_hi, avi.K.upper;
  return rp;
}

ReducedSolution solve_reduced(const ReducedProblem& rp,
                              const AviOptions& options) {
  // On the feasible set of the augmented AVI, x_tilde = scale * R' x, so the
  // variational condition collapses to AVI(K, G, g) in the original x with
  //   G = (n/k) R R' M R R',  g = (n/k) R R' q.
  // The LCP handed to the pivoting solver therefore has size 2n + m.
  const double scale = rp.op.scale();
  Eigen::MatrixXd G = scale * scale *
                      (rp.op.R * (rp.M_tilde * rp.op.R.transpose()));
  Eigen::VectorXd g = scale * (rp.op.R * rp.q_tilde);
  AviSolution sol = solve_avi(AviProblem{std::move(G), std::move(g),
                                         rp.original.K},
                              options);
  if (sol.stats.status != SolveStatus::kSolved) {
    return ReducedSolution{Eigen::VectorXd::Zero(rp.k()), sol.stats};
  }
  return ReducedSolution{project_vector(rp.op, sol.x), sol.stats};
}

AlgorithmAResult run_algorithm_a(const AviProblem& avi, double eps,
                                 double delta, std::optional<int> k_override,
                                 std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("run_algorithm_a: eps");
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw ParameterError("run_algorithm_a: delta");
  }
  const int n = avi.dim();
  AlgorithmAResult res;
  res.eps = eps;
  res.delta = delta;
  res.seed = seed;
  res.ln_eta = default_ln_eta(avi);

  if (k_override.has_value()) {
    if (*k_override < 1 || *k_override > n) {
      throw ParameterError("run_algorithm_a: k override out of [1, n]");
    }
    res.k_used = *k_override;
  } else {
    LowerDimension ld = min_lower_dimension(res.ln_eta, eps, delta, n);
    res.k_used = ld.k;
    res.k_clamped = ld.clamped;
  }

  ProjectionOperator op;
  try {
    op = sample_projection(n, res.k_used, seed);
  } catch (const std::exception& e) {
    throw PipelineError("sample-projection", e.what());
  }

  ReducedProblem rp;
  try {
    rp = build_reduced(avi, op);
  } catch (const std::exception& e) {
    throw PipelineError("build-reduced", e.what());
  }

  ReducedSolution rs = solve_reduced(rp);
  res.reduced_stats = rs.stats;
  if (rs.stats.status != SolveStatus::kSolved) {
    throw PipelineError("solve-reduced",
                        std::string("reduced AVI solve failed: ") +
                            to_string(rs.stats.status));
  }
  res.x_tilde = rs.x_tilde;

  try {
    L1Recovery rec = l1_recover(op, res.x_tilde, box_radius_of(avi.K));
    res.x_star = rec.x;
    res.recovery_stats = rec.stats;
  } catch (const std::exception& e) {
    throw PipelineError("l1-recover", e.what());
  }

  try {
    res.x_sharp = euclidean_project(avi.K, res.x_star);
  } catch (const std::exception& e) {
    throw PipelineError("project", e.what());
  }

  res.epsilon_hat = epsilon_hat(avi, eps, delta, res.ln_eta);
  return res;
}

HotStartResult run_exact_hot_start(const AviProblem& avi, double eps,
                                   double delta, std::optional<int> k_override,
                                   std::uint64_t seed) {
  HotStartResult out;
  out.approx = run_algorithm_a(avi, eps, delta, k_override, seed);
  AviSolution warm = solve_avi_warm(avi, out.approx.x_sharp);
  if (warm.stats.status != SolveStatus::kSolved) {
    throw PipelineError("hot-start", std::string("warm solve failed: ") +
                                         to_string(warm.stats.status));
  }
  AviSolution cold = solve_avi(avi);
  if (cold.stats.status != SolveStatus::kSolved) {
    throw PipelineError("hot-start", std::string("cold solve failed: ") +
                                         to_string(cold.stats.status));
  }
  out.x_exact = warm.x;
  out.warm_stats = warm.stats;
  out.cold_stats = cold.stats;
  return out;
}

CertificateResult theorem1_certificate(const AviProblem& avi,
                                       const AlgorithmAResult& result) {
  VertexSet vs = enumerate_vertices(avi.K);
  const Eigen::VectorXd c = avi.q + avi.M * result.x_sharp;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& v : vs.vertices) {
    worst = std::min(worst, (v - result.x_sharp).dot(c));
  }
  return CertificateResult{worst, result.epsilon_hat,
                           worst >= result.epsilon_hat};
}

}  // namespace avired
