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

#include "avired/polytope.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "avired/errors.h"
#include "avired/solvers.h"

namespace avired {

namespace {
constexpr double kVertexFeasTol = 1e-8;
constexpr double kVertexDedupTol = 1e-8;
constexpr int kExactBoundDim = 8;
}  // namespace

Polytope make_polytope(Eigen::MatrixXd A, Eigen::VectorXd b,
                       Eigen::VectorXd lower, Eigen::VectorXd upper) {
  const int n = static_cast<int>(lower.size());
  if (upper.size() != n) throw DimensionError("polytope: bound size mismatch");
  if (A.rows() != b.size()) throw DimensionError("polytope: A/b row mismatch");
  if (A.rows() > 0 && A.cols() != n) {
    throw DimensionError("polytope: A column count != dimension");
  }
  if (A.rows() == 0) A.resize(0, n);
  for (int i = 0; i < n; ++i) {
    if (!(lower[i] <= upper[i])) {
      throw DimensionError("polytope: lower > upper at index " +
                           std::to_string(i));
    }
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i])) {
      throw DimensionError("polytope: bounds must be finite");
    }
  }
  return Polytope{std::move(A), std::move(b), std::move(lower),
                  std::move(upper)};
}

Polytope make_box(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
  return make_polytope(Eigen::MatrixXd(0, lower.size()), Eigen::VectorXd(0),
                       lower, upper);
}

bool contains(const Polytope& K, const Eigen::VectorXd& x, double tol) {
  if (x.size() != K.dim()) throw DimensionError("contains: dimension mismatch");
  for (int i = 0; i < K.dim(); ++i) {
    if (x[i] < K.lower[i] - tol || x[i] > K.upper[i] + tol) return false;
  }
  if (K.rows() > 0) {
    Eigen::VectorXd slack = K.b - K.A * x;
    if (slack.minCoeff() < -tol) return false;
  }
  return true;
}

Eigen::VectorXd euclidean_project(const Polytope& K, const Eigen::VectorXd& x) {
  if (x.size() != K.dim()) {
    throw DimensionError("euclidean_project: dimension mismatch");
  }
  if (K.rows() == 0) {
    // Pure box: clamping is the exact projection.
    return x.cwiseMax(K.lower).cwiseMin(K.upper);
  }
  const int n = K.dim();
  AviSolution sol = solve_convex_qp(Eigen::MatrixXd::Identity(n, n), -x, K);
  if (sol.stats.status != SolveStatus::kSolved) {
    throw InfeasibleError("euclidean_project: projection QP failed (" +
                          std::string(to_string(sol.stats.status)) + ")");
  }
  return sol.x;
}

std::pair<double, Eigen::VectorXd> support_min(const Polytope& K,
                                               const Eigen::VectorXd& c) {
  if (c.size() != K.dim()) {
    throw DimensionError("support_min: dimension mismatch");
  }
  LpConstraints lc;
  lc.Aeq.resize(0, K.dim());
  lc.beq.resize(0);
  lc.Ain = K.A;
  lc.bin = K.b;
  lc.lower = K.lower;
  lc.upper = K.upper;
  LpSolution sol = solve_lp(c, lc);
  if (sol.status == LpStatus::kInfeasible) {
    throw InfeasibleError("support_min: K is empty");
  }
  if (sol.status != LpStatus::kOptimal) {
    throw SolverError("support_min: LP did not reach optimality");
  }
  return {sol.value, sol.x};
}

VertexSet enumerate_vertices(const Polytope& K, int max_dim) {
  const int n = K.dim();
  const int m = K.rows();
  if (n > max_dim) {
    throw DimensionTooLargeError("enumerate_vertices: dimension " +
                                 std::to_string(n) + " exceeds gate " +
                                 std::to_string(max_dim));
  }
  // Stacked row system: A rows, then upper bound rows x_i <= u_i, then lower
  // bound rows -x_i <= -l_i.
  const int total = m + 2 * n;
  Eigen::MatrixXd G(total, n);
  Eigen::VectorXd h(total);
  if (m > 0) {
    G.topRows(m) = K.A;
    h.head(m) = K.b;
  }
  G.block(m, 0, n, n) = Eigen::MatrixXd::Identity(n, n);
  h.segment(m, n) = K.upper;
  G.block(m + n, 0, n, n) = -Eigen::MatrixXd::Identity(n, n);
  h.tail(n) = -K.lower;

  VertexSet out;
  std::vector<int> idx(n);
  // Iterate over all n-subsets of rows.
  std::vector<int> comb(n);
  for (int i = 0; i < n; ++i) comb[i] = i;
  Eigen::MatrixXd Gs(n, n);
  Eigen::VectorXd hs(n);
  while (true) {
    for (int i = 0; i < n; ++i) {
      Gs.row(i) = G.row(comb[i]);
      hs[i] = h[comb[i]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(Gs);
    lu.setThreshold(1e-10);
    if (lu.rank() == n) {
      Eigen::VectorXd x = lu.solve(hs);
      if (x.allFinite() && contains(K, x, kVertexFeasTol)) {
        bool dup = false;
        for (const auto& v : out.vertices) {
          if ((v - x).lpNorm<Eigen::Infinity>() <= kVertexDedupTol) {
            dup = true;
            break;
          }
        }
        if (!dup) out.vertices.push_back(std::move(x));
      }
    }
    // Next combination.
    int i = n - 1;
    while (i >= 0 && comb[i] == total - n + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
  }
  if (out.vertices.empty()) {
    throw InfeasibleError("enumerate_vertices: no feasible vertex, K empty");
  }
  return out;
}

std::pair<double, double> diameter_and_radius(const Polytope& K) {
  if (K.dim() <= kExactBoundDim) {
    try {
      VertexSet vs = enumerate_vertices(K, kExactBoundDim);
      double d = 0.0, r = 0.0;
      for (size_t i = 0; i < vs.vertices.size(); ++i) {
        r = std::max(r, vs.vertices[i].norm());
        for (size_t j = i + 1; j < vs.vertices.size(); ++j) {
          d = std::max(d, (vs.vertices[i] - vs.vertices[j]).norm());
        }
      }
      return {d, r};
    } catch (const InfeasibleError&) {
      // fall through to the box bound
    }
  }
  const double d = (K.upper - K.lower).norm();
  const double r = K.lower.cwiseAbs().cwiseMax(K.upper.cwiseAbs()).norm();
  return {d, r};
}

double l1_radius(const Polytope& K) {
  if (K.dim() <= kExactBoundDim) {
    try {
      VertexSet vs = enumerate_vertices(K, kExactBoundDim);
      double r = 0.0;
      for (const auto& v : vs.vertices) {
        r = std::max(r, v.lpNorm<1>());
      }
      return r;
    } catch (const InfeasibleError&) {
    }
  }
  return K.lower.cwiseAbs().cwiseMax(K.upper.cwiseAbs()).sum();
}

double log_vertex_bound(int n, int m_total) {
  if (n < 0 || m_total < 0) throw ParameterError("log_vertex_bound: negative");
  if (m_total <= n) return 0.0;  // C(m_total, n) degenerates
  return std::lgamma(m_total + 1.0) - std::lgamma(n + 1.0) -
         std::lgamma(m_total - n + 1.0);
}

}  // namespace avired
