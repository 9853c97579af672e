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

#include "avired/solvers.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "avired/errors.h"
#include "avired/rng.h"

namespace avired {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kSolved: return "solved";
    case SolveStatus::kRayTermination: return "ray-termination";
    case SolveStatus::kIterationLimit: return "iteration-limit";
    case SolveStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// AVI -> LCP reduction
// ---------------------------------------------------------------------------
//
// With s = x - L >= 0 the KKT system of the AVI over {Ax <= b, L <= x <= U}
// is the LCP in z = (s, mu_plus, lambda):
//   w_s      = M s + mu_plus + A' lambda + (ML + q)   (lower-bound mult.)
//   w_u      = -s                        + (U - L)    (upper-bound slack)
//   w_lambda = -A s                      + (b - AL)   (row slack)
// with w'z = 0, w, z >= 0.

std::pair<LcpInstance, LcpEmbedding> avi_to_lcp(const AviProblem& avi) {
  const int n = avi.dim();
  const int m = avi.K.rows();
  const int N = 2 * n + m;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(N, N);
  T.block(0, 0, n, n) = avi.M;
  T.block(0, n, n, n) = Eigen::MatrixXd::Identity(n, n);
  T.block(n, 0, n, n) = -Eigen::MatrixXd::Identity(n, n);
  if (m > 0) {
    T.block(0, 2 * n, n, m) = avi.K.A.transpose();
    T.block(2 * n, 0, m, n) = -avi.K.A;
  }
  Eigen::VectorXd r(N);
  r.head(n) = avi.M * avi.K.lower + avi.q;
  r.segment(n, n) = avi.K.upper - avi.K.lower;
  if (m > 0) r.tail(m) = avi.K.b - avi.K.A * avi.K.lower;
  return {LcpInstance{std::move(T), std::move(r)},
          LcpEmbedding{n, m, avi.K.lower}};
}

Eigen::VectorXd lcp_solution_to_avi(const LcpEmbedding& emb,
                                    const Eigen::VectorXd& z) {
  return emb.lower + z.head(emb.n);
}

// ---------------------------------------------------------------------------
// Lemke's method, dense tableau with lexicographic ratio test
// ---------------------------------------------------------------------------

namespace {

// Variable ids: w_i = i, z_i = N + i, z0 = 2N.
class LemkeTableau {
 public:
  LemkeTableau(const LcpInstance& lcp, const Eigen::VectorXd& covering,
               std::vector<int> basis)
      : N_(lcp.size()),
        A_(N_, 2 * N_ + 1),
        r_(lcp.r),
        basis_(std::move(basis)) {
    A_.leftCols(N_) = Eigen::MatrixXd::Identity(N_, N_);
    A_.middleCols(N_, N_) = -lcp.T;
    A_.col(2 * N_) = -covering;
  }

  // Rebuild tab_ = B^-1 [A | r] from the basis. Returns false if the basis
  // matrix is numerically singular.
  bool refactor() {
    Eigen::MatrixXd B(N_, N_);
    for (int i = 0; i < N_; ++i) B.col(i) = A_.col(basis_[i]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    lu.setThreshold(1e-10);
    if (lu.rank() < N_) return false;
    tab_.resize(N_, 2 * N_ + 2);
    tab_.leftCols(2 * N_ + 1) = lu.solve(A_);
    tab_.col(2 * N_ + 1) = lu.solve(r_);
    return true;
  }

  Eigen::VectorXd rhs() const { return tab_.col(2 * N_ + 1); }
  const std::vector<int>& basis() const { return basis_; }
  int size() const { return N_; }

  // Lexicographic comparison of rows (rhs_i, lex_i)/w_i vs (rhs_j, lex_j)/w_j
  // with positive weights w. Returns true if row i is lexicographically
  // smaller.
  bool lex_less(int i, int j, double wi, double wj) const {
    const double ri = tab_(i, 2 * N_ + 1) / wi;
    const double rj = tab_(j, 2 * N_ + 1) / wj;
    if (std::abs(ri - rj) > 1e-12 * (1.0 + std::abs(ri) + std::abs(rj))) {
      return ri < rj;
    }
    for (int c = 0; c < N_; ++c) {
      const double a = tab_(i, c) / wi;
      const double b = tab_(j, c) / wj;
      if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(a) + std::abs(b))) {
        return a < b;
      }
    }
    return false;
  }

  // Pivot: variable `entering` enters, basis row `row` leaves.
  void pivot(int row, int entering) {
    const double p = tab_(row, entering);
    tab_.row(row) /= p;
    for (int i = 0; i < N_; ++i) {
      if (i == row) continue;
      const double f = tab_(i, entering);
      if (f != 0.0) tab_.row(i) -= f * tab_.row(row);
    }
    basis_[row] = entering;
  }

  double column_entry(int row, int var) const { return tab_(row, var); }

 private:
  int N_;
  Eigen::MatrixXd A_;
  Eigen::VectorXd r_;
  std::vector<int> basis_;
  Eigen::MatrixXd tab_;
};

int complement_of(int var, int N) {
  if (var < N) return var + N;
  return var - N;
}

}  // namespace

LcpSolution lemke_solve(const LcpInstance& lcp, const LemkeOptions& options) {
  const int N = lcp.size();
  LcpSolution out;
  out.z = Eigen::VectorXd::Zero(N);
  out.w = lcp.r;

  std::vector<int> basis(N);
  bool warm = options.start_basis.has_value();
  if (warm) {
    const auto& pick = *options.start_basis;
    for (int i = 0; i < N; ++i) basis[i] = pick[i] ? N + i : i;
  } else {
    for (int i = 0; i < N; ++i) basis[i] = i;
  }

  // Covering vector. For a warm basis B the default is B*1 so that the z0
  // tableau column is exactly -1, which keeps the first pivot well posed.
  Eigen::VectorXd covering;
  if (options.covering.has_value()) {
    covering = *options.covering;
  } else if (!warm) {
    covering = Eigen::VectorXd::Ones(N);
  }

  LemkeTableau* tab_ptr = nullptr;
  LemkeTableau tab = [&] {
    if (covering.size() == 0) {
      // Need B to form the covering vector; build with a placeholder first.
      LemkeTableau tmp(lcp, Eigen::VectorXd::Ones(N), basis);
      if (!tmp.refactor()) {
        covering = Eigen::VectorXd::Ones(N);  // caller checks fallback flag
        return tmp;
      }
      Eigen::MatrixXd B(N, N);
      Eigen::MatrixXd A(N, 2 * N);
      A.leftCols(N) = Eigen::MatrixXd::Identity(N, N);
      A.rightCols(N) = -lcp.T;
      for (int i = 0; i < N; ++i) B.col(i) = A.col(basis[i]);
      covering = B * Eigen::VectorXd::Ones(N);
      return LemkeTableau(lcp, covering, basis);
    }
    return LemkeTableau(lcp, covering, basis);
  }();
  tab_ptr = &tab;

  if (!tab_ptr->refactor()) {
    out.stats.status = SolveStatus::kRayTermination;
    return out;
  }
  ++out.stats.refactorization_count;

  auto extract = [&](LcpSolution& sol) {
    sol.z.setZero();
    Eigen::VectorXd rhs = tab_ptr->rhs();
    for (int i = 0; i < N; ++i) {
      const int id = tab_ptr->basis()[i];
      if (id >= N && id < 2 * N) sol.z[id - N] = std::max(0.0, rhs[i]);
    }
    sol.w = lcp.T * sol.z + lcp.r;
  };

  Eigen::VectorXd rhs = tab_ptr->rhs();
  if (rhs.minCoeff() >= -kFeasTol) {
    extract(out);
    out.stats.status = SolveStatus::kSolved;
    return out;
  }

  // First pivot: z0 enters; leaving row is the lexicographic minimum of
  // (rhs_i, lex_i) among rows with a negative z0 direction.
  const int z0 = 2 * N;
  int leave = -1;
  for (int i = 0; i < N; ++i) {
    const double d = tab_ptr->column_entry(i, z0);
    if (d >= -kZeroPivotTol) continue;  // only rows z0 can lift
    if (rhs[i] >= -kFeasTol) continue;
    if (leave < 0 ||
        tab_ptr->lex_less(i, leave, -tab_ptr->column_entry(i, z0),
                          -tab_ptr->column_entry(leave, z0))) {
      leave = i;
    }
  }
  if (leave < 0) {
    out.stats.status = SolveStatus::kRayTermination;
    return out;
  }
  int entering = complement_of(tab_ptr->basis()[leave], N);
  tab_ptr->pivot(leave, z0);
  ++out.stats.pivot_count;

  while (true) {
    if (out.stats.pivot_count >= options.max_pivots) {
      out.stats.status = SolveStatus::kIterationLimit;
      extract(out);
      return out;
    }
    if (out.stats.pivot_count % options.refactor_interval == 0) {
      if (!tab_ptr->refactor()) {
        out.stats.status = SolveStatus::kRayTermination;
        return out;
      }
      ++out.stats.refactorization_count;
    }
    // Ratio test on the entering column.
    int row = -1;
    for (int i = 0; i < N; ++i) {
      const double d = tab_ptr->column_entry(i, entering);
      if (d <= kZeroPivotTol) continue;
      if (row < 0 || tab_ptr->lex_less(i, row, d,
                                       tab_ptr->column_entry(row, entering))) {
        row = i;
      }
    }
    if (row < 0) {
      out.stats.status = SolveStatus::kRayTermination;
      extract(out);
      return out;
    }
    const int leaving_var = tab_ptr->basis()[row];
    tab_ptr->pivot(row, entering);
    ++out.stats.pivot_count;
    if (leaving_var == z0) break;
    entering = complement_of(leaving_var, N);
  }

  extract(out);
  // Validate the complementary solution before reporting success.
  const double scale = 1.0 + lcp.r.norm();
  const bool feasible = out.w.minCoeff() >= -kFeasTol * scale &&
                        out.z.minCoeff() >= -kFeasTol;
  const bool complementary = std::abs(out.w.dot(out.z)) <= kComplTol * scale;
  out.stats.status = (feasible && complementary) ? SolveStatus::kSolved
                                                 : SolveStatus::kRayTermination;
  return out;
}

// ---------------------------------------------------------------------------
// AVI solves
// ---------------------------------------------------------------------------

namespace {

// Covering vector tailored to the KKT structure: zero on the upper-bound
// slack rows, one elsewhere. Any ray direction then has to keep those slacks
// nonincreasing, which pins the primal block of the ray to zero; empirically
// this removes the z0-growing rays that a uniform covering admits on
// instances with general rows. Those rows never need lifting anyway, since
// their right-hand side U - L is positive.
Eigen::VectorXd avi_covering(int n, int m) {
  Eigen::VectorXd c = Eigen::VectorXd::Ones(2 * n + m);
  c.segment(n, n).setZero();
  return c;
}

AviSolution solve_avi_from_lcp(const AviProblem& avi, const LcpInstance& lcp,
                               const LcpEmbedding& emb,
                               const LemkeOptions& lemke_opts,
                               const AviOptions& options) {
  LcpSolution sol = lemke_solve(lcp, lemke_opts);
  AviSolution out{lcp_solution_to_avi(emb, sol.z), sol.stats};
  if (sol.stats.status == SolveStatus::kRayTermination) {
    // A compact-K AVI always has a solution, so a ray is a numerical
    // artifact; retry once with a randomized covering vector (same zero
    // pattern as the structured default).
    GaussianRng rng(options.restart_seed);
    Eigen::VectorXd covering = avi_covering(emb.n, emb.m);
    for (int i = 0; i < lcp.size(); ++i) {
      if (covering[i] > 0.0) covering[i] = 0.5 + rng.uniform();
    }
    LemkeOptions retry = lemke_opts;
    retry.covering = covering;
    retry.start_basis.reset();
    LcpSolution second = lemke_solve(lcp, retry);
    second.stats.pivot_count += sol.stats.pivot_count;
    second.stats.refactorization_count += sol.stats.refactorization_count;
    out = AviSolution{lcp_solution_to_avi(emb, second.z), second.stats};
    if (second.stats.status == SolveStatus::kRayTermination) {
      // Distinguish an empty K from a genuine pivoting failure.
      LpConstraints feas;
      feas.Aeq.resize(0, emb.n);
      feas.beq.resize(0);
      feas.Ain = avi.K.A;
      feas.bin = avi.K.b;
      feas.lower = avi.K.lower;
      feas.upper = avi.K.upper;
      LpSolution probe = solve_lp(Eigen::VectorXd::Zero(emb.n), feas);
      if (probe.status == LpStatus::kInfeasible) {
        out.stats.status = SolveStatus::kInfeasible;
      }
    }
  }
  return out;
}

}  // namespace

AviSolution solve_avi(const AviProblem& avi, const AviOptions& options) {
  auto [lcp, emb] = avi_to_lcp(avi);
  LemkeOptions lo;
  lo.max_pivots = options.max_pivots;
  lo.covering = avi_covering(emb.n, emb.m);
  return solve_avi_from_lcp(avi, lcp, emb, lo, options);
}

AviSolution solve_avi_warm(const AviProblem& avi, const Eigen::VectorXd& x0,
                           const AviOptions& options) {
  if (x0.size() != avi.dim()) {
    throw DimensionError("solve_avi_warm: x0 dimension mismatch");
  }
  auto [lcp, emb] = avi_to_lcp(avi);
  const int n = avi.dim();
  const int m = avi.K.rows();
  const double active_tol = 1e-6;

  // Crash a complementary basis from x0: pairs whose constraint is active at
  // x0 start on the multiplier side.
  std::vector<bool> pick_z(lcp.size());
  for (int i = 0; i < n; ++i) {
    pick_z[i] = (x0[i] - avi.K.lower[i]) > active_tol;  // s_i basic if off bound
  }
  for (int i = 0; i < n; ++i) {
    pick_z[n + i] = (avi.K.upper[i] - x0[i]) <= active_tol;  // mu+ basic
  }
  if (m > 0) {
    Eigen::VectorXd slack = avi.K.b - avi.K.A * x0;
    for (int j = 0; j < m; ++j) {
      pick_z[2 * n + j] = slack[j] <= active_tol;  // lambda basic
    }
  }

  LemkeOptions lo;
  lo.max_pivots = options.max_pivots;
  lo.start_basis = pick_z;
  LcpSolution sol = lemke_solve(lcp, lo);
  if (sol.stats.status == SolveStatus::kRayTermination &&
      sol.stats.pivot_count == 0) {
    // Singular crash basis: fall back to a cold start, flagged.
    AviSolution cold = solve_avi(avi, options);
    cold.stats.used_cold_fallback = true;
    return cold;
  }
  AviSolution out{lcp_solution_to_avi(emb, sol.z), sol.stats};
  if (sol.stats.status == SolveStatus::kRayTermination) {
    LemkeOptions retry;
    retry.max_pivots = options.max_pivots;
    GaussianRng rng(options.restart_seed);
    Eigen::VectorXd covering = avi_covering(n, m);
    for (int i = 0; i < lcp.size(); ++i) {
      if (covering[i] > 0.0) covering[i] = 0.5 + rng.uniform();
    }
    retry.covering = covering;
    LcpSolution second = lemke_solve(lcp, retry);
    second.stats.pivot_count += sol.stats.pivot_count;
    second.stats.refactorization_count += sol.stats.refactorization_count;
    out = AviSolution{lcp_solution_to_avi(emb, second.z), second.stats};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Two-phase primal simplex
// ---------------------------------------------------------------------------

namespace {

class SimplexTableau {
 public:
  // rows x cols constraint matrix in standard form Ax = b, x >= 0, b >= 0.
  SimplexTableau(Eigen::MatrixXd A, Eigen::VectorXd b, std::vector<int> basis)
      : A_(std::move(A)), b_(std::move(b)), basis_(std::move(basis)) {}

  int rows() const { return static_cast<int>(b_.size()); }
  int cols() const { return static_cast<int>(A_.cols()); }
  const std::vector<int>& basis() const { return basis_; }
  const Eigen::VectorXd& rhs() const { return b_; }
  double entry(int i, int j) const { return A_(i, j); }

  void pivot(int row, int col) {
    const double p = A_(row, col);
    A_.row(row) /= p;
    b_[row] /= p;
    for (int i = 0; i < rows(); ++i) {
      if (i == row) continue;
      const double f = A_(i, col);
      if (f != 0.0) {
        A_.row(i) -= f * A_.row(row);
        b_[i] -= f * b_[row];
        if (b_[i] < 0.0 && b_[i] > -1e-12) b_[i] = 0.0;
      }
    }
    basis_[row] = col;
  }

  void drop_row(int row) {
    const int nr = rows();
    for (int i = row; i + 1 < nr; ++i) {
      A_.row(i) = A_.row(i + 1);
      b_[i] = b_[i + 1];
      basis_[i] = basis_[i + 1];
    }
    A_.conservativeResize(nr - 1, Eigen::NoChange);
    b_.conservativeResize(nr - 1);
    basis_.resize(nr - 1);
  }

 private:
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  std::vector<int> basis_;
};

enum class SimplexOutcome { kOptimal, kUnbounded, kIterationLimit };

// Minimize c'x over the tableau with x >= 0. `allowed` masks columns that may
// enter (used to exclude artificials in phase 2).
SimplexOutcome simplex_iterate(SimplexTableau& tab, const Eigen::VectorXd& c,
                               const std::vector<bool>& allowed,
                               int max_pivots, int* pivot_count) {
  const int rows = tab.rows();
  const int cols = tab.cols();
  // Reduced costs maintained directly from the basis each iteration; at our
  // problem sizes the O(rows * cols) recomputation is cheap and avoids drift.
  bool bland = false;
  int degenerate_streak = 0;
  while (true) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(rows);
    for (int i = 0; i < rows; ++i) y[i] = c[tab.basis()[i]];
    // reduced cost of column j: c_j - y' A_j (A is already B^-1-transformed)
    int enter = -1;
    double best = -1e-9;
    for (int j = 0; j < cols; ++j) {
      if (!allowed[j]) continue;
      double rc = c[j];
      for (int i = 0; i < rows; ++i) rc -= y[i] * tab.entry(i, j);
      if (rc < best - 1e-12) {
        if (bland) {
          if (enter < 0) enter = j;  // first eligible index
        } else {
          best = rc;
          enter = j;
        }
      } else if (bland && rc < -1e-9 && enter < 0) {
        enter = j;
      }
    }
    if (enter < 0) return SimplexOutcome::kOptimal;

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows; ++i) {
      const double a = tab.entry(i, enter);
      if (a <= 1e-10) continue;
      const double ratio = tab.rhs()[i] / a;
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 && leave >= 0 &&
           tab.basis()[i] < tab.basis()[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) return SimplexOutcome::kUnbounded;

    const bool degenerate = best_ratio <= 1e-12;
    degenerate_streak = degenerate ? degenerate_streak + 1 : 0;
    if (degenerate_streak > rows + cols) bland = true;  // anti-cycling

    tab.pivot(leave, enter);
    if (++*pivot_count >= max_pivots) return SimplexOutcome::kIterationLimit;
  }
}

}  // namespace

LpSolution solve_lp(const Eigen::VectorXd& c, const LpConstraints& constraints,
                    int max_pivots) {
  const int n = static_cast<int>(c.size());
  const auto& lc = constraints;
  if (lc.lower.size() != n || lc.upper.size() != n) {
    throw DimensionError("solve_lp: bound size mismatch");
  }
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(lc.lower[i])) {
      throw ParameterError("solve_lp: lower bounds must be finite");
    }
    if (lc.lower[i] > lc.upper[i]) {
      LpSolution out;
      out.status = LpStatus::kInfeasible;
      out.x = Eigen::VectorXd::Zero(n);
      return out;
    }
  }
  const int p = static_cast<int>(lc.beq.size());
  const int q = static_cast<int>(lc.bin.size());

  // Shift y = x - lower >= 0; finite upper bounds become inequality rows.
  std::vector<int> ub_rows;
  for (int i = 0; i < n; ++i) {
    if (std::isfinite(lc.upper[i])) ub_rows.push_back(i);
  }
  const int s = q + static_cast<int>(ub_rows.size());  // inequality count
  const int rows = p + s;
  const int cols = n + s;  // structural + slacks (artificials appended later)

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b(rows);
  if (p > 0) {
    A.topLeftCorner(p, n) = lc.Aeq;
    b.head(p) = lc.beq - lc.Aeq * lc.lower;
  }
  if (q > 0) {
    A.block(p, 0, q, n) = lc.Ain;
    b.segment(p, q) = lc.bin - lc.Ain * lc.lower;
  }
  for (size_t t = 0; t < ub_rows.size(); ++t) {
    const int i = ub_rows[t];
    A(p + q + static_cast<int>(t), i) = 1.0;
    b[p + q + static_cast<int>(t)] = lc.upper[i] - lc.lower[i];
  }
  for (int j = 0; j < s; ++j) A(p + j, n + j) = 1.0;  // slacks

  // Normalize rhs >= 0.
  for (int i = 0; i < rows; ++i) {
    if (b[i] < 0.0) {
      A.row(i) = -A.row(i);
      b[i] = -b[i];
    }
  }

  // Initial basis: slack where it has coefficient +1, otherwise artificial.
  std::vector<int> basis(rows, -1);
  std::vector<int> art_rows;
  for (int i = 0; i < rows; ++i) {
    const int j = i - p;
    if (j >= 0 && A(i, n + j) > 0.5) {
      basis[i] = n + j;
    } else {
      art_rows.push_back(i);
    }
  }
  const int a_count = static_cast<int>(art_rows.size());
  Eigen::MatrixXd Afull(rows, cols + a_count);
  Afull.leftCols(cols) = A;
  Afull.rightCols(a_count).setZero();
  for (int t = 0; t < a_count; ++t) {
    Afull(art_rows[t], cols + t) = 1.0;
    basis[art_rows[t]] = cols + t;
  }

  SimplexTableau tab(std::move(Afull), b, basis);
  LpSolution out;
  out.x = Eigen::VectorXd::Zero(n);

  std::vector<bool> allowed(cols + a_count, true);
  if (a_count > 0) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(cols + a_count);
    phase1.tail(a_count).setOnes();
    SimplexOutcome o =
        simplex_iterate(tab, phase1, allowed, max_pivots, &out.pivot_count);
    if (o == SimplexOutcome::kIterationLimit) {
      out.status = LpStatus::kIterationLimit;
      return out;
    }
    double infeas = 0.0;
    for (int i = 0; i < tab.rows(); ++i) {
      if (tab.basis()[i] >= cols) infeas += tab.rhs()[i];
    }
    if (infeas > 1e-7) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    // Drive residual artificials out of the basis; drop redundant rows.
    for (int i = tab.rows() - 1; i >= 0; --i) {
      if (tab.basis()[i] < cols) continue;
      int piv = -1;
      for (int j = 0; j < cols; ++j) {
        if (std::abs(tab.entry(i, j)) > 1e-9) {
          piv = j;
          break;
        }
      }
      if (piv >= 0) {
        tab.pivot(i, piv);
        ++out.pivot_count;
      } else {
        tab.drop_row(i);
      }
    }
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(cols + a_count);
  phase2.head(n) = c;
  std::vector<bool> allowed2(cols + a_count, true);
  for (int j = cols; j < cols + a_count; ++j) allowed2[j] = false;
  SimplexOutcome o =
      simplex_iterate(tab, phase2, allowed2, max_pivots, &out.pivot_count);
  if (o == SimplexOutcome::kIterationLimit) {
    out.status = LpStatus::kIterationLimit;
    return out;
  }
  if (o == SimplexOutcome::kUnbounded) {
    out.status = LpStatus::kUnbounded;
    return out;
  }

  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < tab.rows(); ++i) {
    const int id = tab.basis()[i];
    if (id < n) y[id] = tab.rhs()[i];
  }
  out.x = y + lc.lower;
  out.value = c.dot(out.x);
  out.status = LpStatus::kOptimal;
  return out;
}

// ---------------------------------------------------------------------------
// Convex QP and l1 recovery
// ---------------------------------------------------------------------------

AviSolution solve_convex_qp(const Eigen::MatrixXd& H, const Eigen::VectorXd& g,
                            const Polytope& K) {
  const int n = K.dim();
  if (H.rows() != n || H.cols() != n || g.size() != n) {
    throw DimensionError("solve_convex_qp: dimension mismatch");
  }
  const double asym = (H - H.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * (1.0 + H.cwiseAbs().maxCoeff())) {
    throw ParameterError("solve_convex_qp: H not symmetric");
  }
  // The QP's first-order conditions are AVI(K, H, g).
  return solve_avi(AviProblem{H, g, K});
}

L1Recovery l1_recover(const ProjectionOperator& op,
                      const Eigen::VectorXd& x_tilde, double box_radius) {
  const int n = op.n();
  const int k = op.k();
  if (x_tilde.size() != k) {
    throw DimensionError("l1_recover: x_tilde length != k");
  }
  if (!(box_radius > 0.0)) {
    throw ParameterError("l1_recover: box_radius must be positive");
  }
  // Split x = pos - neg, pos/neg in [0, 10 * box_radius].
  const double cap = 10.0 * box_radius;
  Eigen::MatrixXd E = op.scale() * op.R.transpose();  // k x n
  LpConstraints lc;
  lc.Aeq.resize(k, 2 * n);
  lc.Aeq.leftCols(n) = E;
  lc.Aeq.rightCols(n) = -E;
  lc.beq = x_tilde;
  lc.Ain.resize(0, 2 * n);
  lc.bin.resize(0);
  lc.lower = Eigen::VectorXd::Zero(2 * n);
  lc.upper = Eigen::VectorXd::Constant(2 * n, cap);
  LpSolution lp = solve_lp(Eigen::VectorXd::Ones(2 * n), lc);
  if (lp.status != LpStatus::kOptimal) {
    throw SolverError(
        std::string("l1_recover: internal error, recovery LP status ") +
        (lp.status == LpStatus::kInfeasible ? "infeasible" : "non-optimal"));
  }
  L1Recovery out;
  out.x = lp.x.head(n) - lp.x.tail(n);
  out.stats.pivot_count = lp.pivot_count;
  out.stats.status = SolveStatus::kSolved;
  const double resid = (E * out.x - x_tilde).norm();
  if (resid > 1e-7 * (1.0 + x_tilde.norm())) {
    throw SolverError("l1_recover: constraint residual " +
                      std::to_string(resid) + " out of tolerance");
  }
  return out;
}

}  // namespace avired
