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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "avired/avi.h"
#include "avired/errors.h"
#include "avired/polytope.h"
#include "avired/randproj.h"
#include "avired/rng.h"
#include "avired/solvers.h"

using namespace avired;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

// Brute-force LCP oracle: enumerate complementary bases (z_i basic for i in
// a subset S), solve T_SS z_S = -r_S, accept if z_S >= 0 and the implied
// w outside S is >= 0. Exponential; N <= 12 only.
std::optional<Eigen::VectorXd> lcp_brute_force(const LcpInstance& lcp,
                                               double tol = 1e-9) {
  const int N = lcp.size();
  for (int mask = 0; mask < (1 << N); ++mask) {
    std::vector<int> S;
    for (int i = 0; i < N; ++i)
      if (mask & (1 << i)) S.push_back(i);
    const int s = static_cast<int>(S.size());
    Eigen::MatrixXd Tss(s, s);
    Eigen::VectorXd rs(s);
    for (int a = 0; a < s; ++a) {
      rs[a] = lcp.r[S[a]];
      for (int b = 0; b < s; ++b) Tss(a, b) = lcp.T(S[a], S[b]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(Tss);
    if (s > 0 && !lu.isInvertible()) continue;
    Eigen::VectorXd zs = s > 0 ? lu.solve(-rs).eval() : Eigen::VectorXd(0);
    if (s > 0 && zs.minCoeff() < -tol) continue;
    Eigen::VectorXd z = Eigen::VectorXd::Zero(N);
    for (int a = 0; a < s; ++a) z[S[a]] = std::max(0.0, zs[a]);
    Eigen::VectorXd w = lcp.T * z + lcp.r;
    if (w.minCoeff() < -tol) continue;
    return z;
  }
  return std::nullopt;
}

bool is_lcp_solution(const LcpInstance& lcp, const Eigen::VectorXd& z,
                     double tol = 1e-7) {
  Eigen::VectorXd w = lcp.T * z + lcp.r;
  return z.minCoeff() >= -tol && w.minCoeff() >= -tol &&
         std::abs(w.dot(z)) <= tol * (1.0 + lcp.r.norm());
}

AviProblem random_avi(int n, int m, std::uint64_t seed, double half_width) {
  GaussianRng rng(seed);
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = rng.normal();
  Eigen::VectorXd q(n);
  for (int i = 0; i < n; ++i) q[i] = rng.normal();
  Eigen::MatrixXd A(m, n);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
    b[i] = 1.0 + rng.uniform();  // keeps the origin strictly feasible
  }
  return make_avi(M, q,
                  make_polytope(A, b,
                                Eigen::VectorXd::Constant(n, -half_width),
                                Eigen::VectorXd::Constant(n, half_width)));
}

// Brute-force box-QP oracle: for each active-set pattern (each coordinate at
// lower, upper, or free), solve the free block of Hx = -g and keep the best
// feasible stationary candidate. Requires a pure box and PD H.
Eigen::VectorXd qp_box_brute_force(const Eigen::MatrixXd& H,
                                   const Eigen::VectorXd& g,
                                   const Eigen::VectorXd& lo,
                                   const Eigen::VectorXd& hi) {
  const int n = static_cast<int>(g.size());
  double best = kInf;
  Eigen::VectorXd best_x;
  std::vector<int> state(n, 0);
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    int c = code;
    std::vector<int> free_idx;
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) {
      state[i] = c % 3;
      c /= 3;
      if (state[i] == 0) {
        free_idx.push_back(i);
      } else {
        x[i] = state[i] == 1 ? lo[i] : hi[i];
      }
    }
    const int f = static_cast<int>(free_idx.size());
    if (f > 0) {
      Eigen::MatrixXd Hf(f, f);
      Eigen::VectorXd rhs(f);
      for (int a = 0; a < f; ++a) {
        rhs[a] = -g[free_idx[a]];
        for (int i = 0; i < n; ++i) {
          if (state[i] != 0) rhs[a] -= H(free_idx[a], i) * x[i];
        }
        for (int b = 0; b < f; ++b) Hf(a, b) = H(free_idx[a], free_idx[b]);
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(Hf);
      if (!lu.isInvertible()) continue;
      Eigen::VectorXd xf = lu.solve(rhs);
      for (int a = 0; a < f; ++a) x[free_idx[a]] = xf[a];
    }
    bool feasible = true;
    for (int i = 0; i < n; ++i) {
      if (x[i] < lo[i] - 1e-10 || x[i] > hi[i] + 1e-10) feasible = false;
    }
    if (!feasible) continue;
    const double val = 0.5 * x.dot(H * x) + g.dot(x);
    if (val < best) {
      best = val;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace

TEST_CASE("KKT reduction: sizes and data layout") {
  AviProblem avi = random_avi(3, 2, 11, 2.0);
  auto [lcp, emb] = avi_to_lcp(avi);
  CHECK(lcp.size() == 8);  // 2n + m
  CHECK(emb.n == 3);
  CHECK(emb.m == 2);
  // Top-left block is M; top-middle is +I; top-right is A'.
  CHECK((lcp.T.topLeftCorner(3, 3) - avi.M).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((lcp.T.block(0, 3, 3, 3) - Eigen::MatrixXd::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() <= 1e-14);
  CHECK((lcp.T.block(0, 6, 3, 2) - avi.K.A.transpose()).cwiseAbs().maxCoeff() <=
        1e-14);
  // r = (M L + q, U - L, b - A L).
  CHECK((lcp.r.head(3) - (avi.M * avi.K.lower + avi.q)).norm() <= 1e-12);
  CHECK((lcp.r.segment(3, 3) - (avi.K.upper - avi.K.lower)).norm() <= 1e-12);
  CHECK((lcp.r.tail(2) - (avi.K.b - avi.K.A * avi.K.lower)).norm() <= 1e-12);
}

TEST_CASE("KKT reduction solution maps back to an AVI solution") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
    AviProblem avi = random_avi(2, 1, seed, 1.5);
    auto [lcp, emb] = avi_to_lcp(avi);
    auto z = lcp_brute_force(lcp);
    REQUIRE(z.has_value());
    Eigen::VectorXd x = lcp_solution_to_avi(emb, *z);
    CHECK(contains(avi.K, x, 1e-7));
    CHECK(verify_by_vertices(avi, x, 1e-6).is_solution);
  }
}

TEST_CASE("complementary pivoting on textbook instances") {
  // PD symmetric T: unique solution.
  LcpInstance a;
  a.T.resize(2, 2);
  a.T << 2, 1, 1, 2;
  a.r = vec2(-5, -6);
  LcpSolution sa = lemke_solve(a);
  CHECK(sa.stats.status == SolveStatus::kSolved);
  CHECK(is_lcp_solution(a, sa.z));
  CHECK((sa.z - vec2(4.0 / 3.0, 7.0 / 3.0)).norm() <= 1e-8);

  // Already feasible r >= 0: trivial solution z = 0 with no pivots.
  LcpInstance b{Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Ones(3)};
  LcpSolution sb = lemke_solve(b);
  CHECK(sb.stats.status == SolveStatus::kSolved);
  CHECK(sb.z.norm() == 0.0);
  CHECK(sb.stats.pivot_count == 0);

  // Classic ray-termination instance: T = -I has no solution for r < 0.
  LcpInstance c{-Eigen::MatrixXd::Identity(2, 2), vec2(-1, -1)};
  CHECK(lemke_solve(c).stats.status == SolveStatus::kRayTermination);
}

TEST_CASE("complementary pivoting matches the brute-force oracle") {
  GaussianRng meta(99);
  int solved = 0;
  for (int t = 0; t < 60; ++t) {
    const int N = 2 + static_cast<int>(meta.uniform() * 4.0);  // 2..5
    GaussianRng rng(derive_seed(1234, t));
    // PSD + identity keeps T copositive-plus so the method must solve it.
    Eigen::MatrixXd G(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) G(i, j) = rng.normal();
    LcpInstance lcp;
    lcp.T = G * G.transpose() + Eigen::MatrixXd::Identity(N, N);
    lcp.r.resize(N);
    for (int i = 0; i < N; ++i) lcp.r[i] = 2.0 * rng.normal();
    LcpSolution s = lemke_solve(lcp);
    REQUIRE(s.stats.status == SolveStatus::kSolved);
    CHECK(is_lcp_solution(lcp, s.z));
    auto oracle = lcp_brute_force(lcp);
    REQUIRE(oracle.has_value());
    // PD T: the solution is unique, so the two must agree.
    CHECK((s.z - *oracle).cwiseAbs().maxCoeff() <= 1e-6);
    ++solved;
  }
  CHECK(solved == 60);
}

TEST_CASE("scalar AVI closed form") {
  for (double c : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
    Eigen::MatrixXd M(1, 1);
    M << 1;
    Eigen::VectorXd q(1);
    q << c;
    AviProblem avi = make_avi(M, q, make_box(Eigen::VectorXd::Zero(1),
                                             Eigen::VectorXd::Ones(1)));
    AviSolution s = solve_avi(avi);
    REQUIRE(s.stats.status == SolveStatus::kSolved);
    CHECK(s.x[0] == doctest::Approx(std::clamp(-c, 0.0, 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("random small AVIs pass the vertex check") {
  int solved = 0;
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + t % 3;
    const int m = t % 3;
    AviProblem avi = random_avi(n, m, derive_seed(777, t), 2.0);
    AviSolution s = solve_avi(avi);
    if (s.stats.status != SolveStatus::kSolved) continue;
    ++solved;
    CHECK(contains(avi.K, s.x, 1e-7));
    CHECK(residual_metric(avi, s.x) <= 1e-6);
    CHECK(verify_by_vertices(avi, s.x, 1e-6).is_solution);
  }
  // Indefinite M: not guaranteed, but the compact box makes most instances
  // processable. Expect a clear majority to solve.
  CHECK(solved >= 30);
}

TEST_CASE("warm start from the solution finishes without pivoting") {
  for (std::uint64_t seed : {21ULL, 22ULL, 23ULL}) {
    AviProblem avi = random_avi(3, 1, seed, 2.0);
    AviSolution cold = solve_avi(avi);
    REQUIRE(cold.stats.status == SolveStatus::kSolved);
    AviSolution warm = solve_avi_warm(avi, cold.x);
    REQUIRE(warm.stats.status == SolveStatus::kSolved);
    CHECK(residual_metric(avi, warm.x) <= 1e-6);
    CHECK(warm.stats.pivot_count <= cold.stats.pivot_count);
    CHECK(warm.stats.pivot_count == 0);
  }
}

TEST_CASE("warm start from an arbitrary interior point still solves") {
  AviProblem avi = random_avi(4, 2, 31, 2.0);
  AviSolution cold = solve_avi(avi);
  REQUIRE(cold.stats.status == SolveStatus::kSolved);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(4);  // interior of the box
  AviSolution warm = solve_avi_warm(avi, x0);
  REQUIRE(warm.stats.status == SolveStatus::kSolved);
  CHECK(residual_metric(avi, warm.x) <= 1e-6);
}

TEST_CASE("linear programs against vertex enumeration") {
  GaussianRng meta(5);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 3;
    const int m = t % 3;
    AviProblem shell = random_avi(n, m, derive_seed(4242, t), 2.0);
    const Polytope& K = shell.K;
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) c[i] = meta.normal();
    auto [val, arg] = support_min(K, c);
    VertexSet vs = enumerate_vertices(K);
    REQUIRE(vs.count() > 0);
    double best = kInf;
    for (const auto& v : vs.vertices) best = std::min(best, c.dot(v));
    CHECK(val == doctest::Approx(best).epsilon(1e-7));
    CHECK(contains(K, arg, 1e-7));
  }
}

TEST_CASE("equality-constrained LP with free-ish uppers") {
  // min -x1 - x2 s.t. x1 + x2 = 1, x >= 0 (upper +inf): value -1.
  LpConstraints lc;
  lc.Aeq.resize(1, 2);
  lc.Aeq << 1, 1;
  lc.beq.resize(1);
  lc.beq << 1;
  lc.Ain.resize(0, 2);
  lc.bin.resize(0);
  lc.lower = Eigen::VectorXd::Zero(2);
  lc.upper = Eigen::VectorXd::Constant(2, kInf);
  LpSolution s = solve_lp(vec2(-1, -1), lc);
  CHECK(s.status == LpStatus::kOptimal);
  CHECK(s.value == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(s.x.sum() == doctest::Approx(1.0).epsilon(1e-9));

  // Infeasible: x1 + x2 = -1 with x >= 0.
  lc.beq << -1;
  CHECK(solve_lp(vec2(1, 1), lc).status == LpStatus::kInfeasible);

  // Unbounded: min -x1, x1 free above, no rows.
  LpConstraints un;
  un.Aeq.resize(0, 1);
  un.beq.resize(0);
  un.Ain.resize(0, 1);
  un.bin.resize(0);
  un.lower = Eigen::VectorXd::Zero(1);
  un.upper = Eigen::VectorXd::Constant(1, kInf);
  Eigen::VectorXd c1(1);
  c1 << -1;
  CHECK(solve_lp(c1, un).status == LpStatus::kUnbounded);
}

TEST_CASE("degenerate LP terminates (anti-cycling fallback)") {
  // Four rows all active at the optimum (the origin).
  LpConstraints lc;
  lc.Ain.resize(4, 2);
  lc.Ain << 1, 0, 0, 1, 1, 1, 1, -1;
  lc.bin = Eigen::VectorXd::Zero(4);
  lc.Aeq.resize(0, 2);
  lc.beq.resize(0);
  lc.lower = Eigen::VectorXd::Constant(2, -1.0);
  lc.upper = Eigen::VectorXd::Ones(2);
  LpSolution s = solve_lp(vec2(-1, -1), lc);
  CHECK(s.status == LpStatus::kOptimal);
  CHECK(s.value == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(s.x.cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("convex QP against the active-set oracle") {
  for (int t = 0; t < 25; ++t) {
    const int n = 2 + t % 3;
    GaussianRng rng(derive_seed(31337, t));
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
    Eigen::MatrixXd H =
        G * G.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g[i] = 2.0 * rng.normal();
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, -1.0);
    Eigen::VectorXd hi = Eigen::VectorXd::Ones(n);
    AviSolution s = solve_convex_qp(H, g, make_box(lo, hi));
    REQUIRE(s.stats.status == SolveStatus::kSolved);
    Eigen::VectorXd oracle = qp_box_brute_force(H, g, lo, hi);
    CHECK((s.x - oracle).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("QP rejects asymmetric Hessians") {
  Eigen::MatrixXd H(2, 2);
  H << 1, 0.5, -0.5, 1;
  CHECK_THROWS_AS(
      solve_convex_qp(H, Eigen::VectorXd::Zero(2),
                      make_box(vec2(-1, -1), vec2(1, 1))),
      ParameterError);
}

TEST_CASE("sparse recovery: 1-sparse signals from scaled measurements") {
  const int n = 30, k = 15;
  int exact = 0;
  for (int t = 0; t < 20; ++t) {
    ProjectionOperator op = sample_projection(n, k, derive_seed(808, t));
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
    x0[t % n] = (t % 2 == 0) ? 3.0 : -2.0;
    Eigen::VectorXd meas = project_vector(op, x0);
    L1Recovery rec = l1_recover(op, meas, 10.0);
    CHECK((project_vector(op, rec.x) - meas).norm() <=
          1e-7 * (1.0 + meas.norm()));
    if ((rec.x - x0).norm() <= 1e-6) ++exact;
  }
  CHECK(exact >= 18);
}

TEST_CASE("dense targets recover a minimum-l1 consistent point") {
  const int n = 10, k = 10;  // square case: unique preimage
  ProjectionOperator op = sample_projection(n, k, 4);
  GaussianRng rng(6);
  Eigen::VectorXd x0(n);
  for (int i = 0; i < n; ++i) x0[i] = rng.normal();
  Eigen::VectorXd meas = project_vector(op, x0);
  L1Recovery rec = l1_recover(op, meas, 20.0);
  CHECK((rec.x - x0).norm() <= 1e-6 * (1.0 + x0.norm()));
}
