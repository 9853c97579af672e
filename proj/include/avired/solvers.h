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

#ifndef AVIRED_SOLVERS_H_
#define AVIRED_SOLVERS_H_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "avired/avi.h"
#include "avired/polytope.h"
#include "avired/randproj.h"

namespace avired {

// Shared numerical tolerances; all solver modules inherit these.
inline constexpr double kFeasTol = 1e-8;
inline constexpr double kComplTol = 1e-7;
inline constexpr double kZeroPivotTol = 1e-11;

// Find w, z >= 0 with w = Tz + r and w'z = 0.
struct LcpInstance {
  Eigen::MatrixXd T;  // N x N
  Eigen::VectorXd r;

  int size() const { return static_cast<int>(r.size()); }
};

enum class SolveStatus { kSolved, kRayTermination, kIterationLimit, kInfeasible };

struct SolveStats {
  int pivot_count = 0;
  int refactorization_count = 0;
  SolveStatus status = SolveStatus::kSolved;
  bool used_cold_fallback = false;  // warm start crash basis was singular
};

const char* to_string(SolveStatus s);

// Bookkeeping for mapping an LCP solution back to AVI coordinates:
// z = (s, mu_plus, lambda) with x = lower + s.
struct LcpEmbedding {
  int n;  // primal dimension
  int m;  // rows of A
  Eigen::VectorXd lower;
};

// KKT reduction of AVI(K, M, q) over K = {Ax <= b, L <= x <= U} to an LCP of
// size 2n + m in z = (x - L, upper-bound multipliers, row multipliers).
std::pair<LcpInstance, LcpEmbedding> avi_to_lcp(const AviProblem& avi);

Eigen::VectorXd lcp_solution_to_avi(const LcpEmbedding& emb,
                                    const Eigen::VectorXd& z);

struct LemkeOptions {
  int max_pivots = 20000;
  int refactor_interval = 50;
  // Covering vector; defaults to all-ones.
  std::optional<Eigen::VectorXd> covering;
  // Complementary starting basis: pick_z[i] true means z_i starts basic.
  std::optional<std::vector<bool>> start_basis;
};

struct LcpSolution {
  Eigen::VectorXd z;
  Eigen::VectorXd w;
  SolveStats stats;
};

// Lemke complementary pivoting with lexicographic ratio test.
LcpSolution lemke_solve(const LcpInstance& lcp, const LemkeOptions& options = {});

struct AviOptions {
  int max_pivots = 20000;
  std::uint64_t restart_seed = 0x5EEDBA5EULL;  // randomized covering restart
};

struct AviSolution {
  Eigen::VectorXd x;
  SolveStats stats;
};

// Solve the AVI by complementary pivoting on its KKT LCP. Ray termination
// triggers one randomized-covering-vector restart before reporting failure.
AviSolution solve_avi(const AviProblem& avi, const AviOptions& options = {});

// Same contract, but the starting complementary basis is crashed from x0:
// pairs active at x0 (within 1e-6) enter the basis on the multiplier side.
// Stats count only post-crash pivots. A singular crash basis falls back to a
// cold start, flagged in stats.
AviSolution solve_avi_warm(const AviProblem& avi, const Eigen::VectorXd& x0,
                           const AviOptions& options = {});

// General LP: min c'x s.t. Aeq x = beq, Ain x <= bin, lower <= x <= upper.
// lower must be finite; upper entries may be +inf.
struct LpConstraints {
  Eigen::MatrixXd Aeq;  // may have 0 rows
  Eigen::VectorXd beq;
  Eigen::MatrixXd Ain;  // may have 0 rows
  Eigen::VectorXd bin;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpSolution {
  Eigen::VectorXd x;
  double value = 0.0;
  LpStatus status = LpStatus::kOptimal;
  int pivot_count = 0;
};

// Two-phase primal simplex (dense tableau), Dantzig pricing with a Bland's
// rule fallback after a degenerate streak.
LpSolution solve_lp(const Eigen::VectorXd& c, const LpConstraints& constraints,
                    int max_pivots = 50000);

// min 0.5 x'Hx + g'x over K via the equivalent AVI(K, H, g).
// H must be symmetric (checked to 1e-8) and PSD.
AviSolution solve_convex_qp(const Eigen::MatrixXd& H, const Eigen::VectorXd& g,
                            const Polytope& K);

struct L1Recovery {
  Eigen::VectorXd x;
  SolveStats stats;
};

// min |x|_1 subject to sqrt(n/k) R' x = x_tilde, via the split x = p - m,
// p, m in [0, 10 * box_radius]. Infeasibility cannot occur for consistent
// x_tilde (R has full column rank) and is reported as an internal error.
L1Recovery l1_recover(const ProjectionOperator& op,
                      const Eigen::VectorXd& x_tilde, double box_radius);

}  // namespace avired

#endif  // AVIRED_SOLVERS_H_
