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

#include <algorithm>
#include <cmath>

#include "avired/errors.h"
#include "avired/polytope.h"
#include "avired/rng.h"

using namespace avired;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

// Simplex in the plane: x + y <= 1, x, y in [0, 1].
Polytope triangle() {
  Eigen::MatrixXd A(1, 2);
  A << 1, 1;
  Eigen::VectorXd b(1);
  b << 1;
  return make_polytope(A, b, vec2(0, 0), vec2(1, 1));
}

bool has_vertex(const VertexSet& vs, const Eigen::VectorXd& v, double tol) {
  return std::any_of(vs.vertices.begin(), vs.vertices.end(),
                     [&](const Eigen::VectorXd& u) {
                       return (u - v).cwiseAbs().maxCoeff() <= tol;
                     });
}

}  // namespace

TEST_CASE("make_polytope validates shapes and bound order") {
  CHECK_THROWS_AS(
      make_polytope(Eigen::MatrixXd::Zero(1, 3), Eigen::VectorXd::Zero(1),
                    Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2)),
      DimensionError);
  CHECK_THROWS_AS(
      make_polytope(Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Zero(1),
                    Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2)),
      DimensionError);
  CHECK_THROWS_AS(make_polytope(Eigen::MatrixXd(0, 2), Eigen::VectorXd(0),
                                vec2(1, 0), vec2(0, 1)),
                  DimensionError);
}

TEST_CASE("contains on triangle") {
  Polytope K = triangle();
  CHECK(contains(K, vec2(0.2, 0.3), 1e-9));
  CHECK(contains(K, vec2(0.5, 0.5), 1e-9));   // boundary
  CHECK(!contains(K, vec2(0.6, 0.6), 1e-9));  // violates the row
  CHECK(!contains(K, vec2(-0.1, 0.2), 1e-9));
  CHECK(!contains(K, vec2(0.2, 1.1), 1e-9));
}

TEST_CASE("box projection equals componentwise clamping") {
  Eigen::VectorXd lo(3), hi(3);
  lo << -1, 0, 2;
  hi << 1, 2, 5;
  Polytope K = make_box(lo, hi);
  GaussianRng rng(3);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd x(3);
    for (int i = 0; i < 3; ++i) x[i] = 6.0 * rng.normal();
    Eigen::VectorXd p = euclidean_project(K, x);
    for (int i = 0; i < 3; ++i) {
      CHECK(p[i] == doctest::Approx(std::clamp(x[i], lo[i], hi[i]))
                        .epsilon(1e-10));
    }
  }
}

TEST_CASE("projection onto triangle, hand-computed cases") {
  Polytope K = triangle();
  // Interior points are fixed.
  Eigen::VectorXd inside = vec2(0.25, 0.25);
  CHECK((euclidean_project(K, inside) - inside).norm() <= 1e-7);
  // (1, 1) projects to the midpoint of the diagonal edge.
  CHECK((euclidean_project(K, vec2(1, 1)) - vec2(0.5, 0.5)).norm() <= 1e-6);
  // (-1, 0.5) projects onto the left edge.
  CHECK((euclidean_project(K, vec2(-1, 0.5)) - vec2(0, 0.5)).norm() <= 1e-6);
  // Idempotence.
  Eigen::VectorXd p = euclidean_project(K, vec2(3, -2));
  CHECK((euclidean_project(K, p) - p).norm() <= 1e-6);
  CHECK(contains(K, p, 1e-6));
}

TEST_CASE("projection obstacle inequality") {
  // (x - p)'(z - p) <= 0 for all z in K characterizes p = proj(x).
  Polytope K = triangle();
  VertexSet vs = enumerate_vertices(K);
  GaussianRng rng(17);
  for (int t = 0; t < 25; ++t) {
    Eigen::VectorXd x = vec2(4.0 * rng.normal(), 4.0 * rng.normal());
    Eigen::VectorXd p = euclidean_project(K, x);
    for (const auto& v : vs.vertices) {
      CHECK((x - p).dot(v - p) <= 1e-6);
    }
  }
}

TEST_CASE("support_min on a box matches the sign oracle") {
  Eigen::VectorXd lo(4), hi(4);
  lo << -2, -1, 0, 3;
  hi << 2, 1, 4, 7;
  Polytope K = make_box(lo, hi);
  GaussianRng rng(5);
  for (int t = 0; t < 30; ++t) {
    Eigen::VectorXd c(4);
    for (int i = 0; i < 4; ++i) c[i] = rng.normal();
    auto [val, arg] = support_min(K, c);
    double expect = 0;
    for (int i = 0; i < 4; ++i) expect += c[i] * (c[i] > 0 ? lo[i] : hi[i]);
    CHECK(val == doctest::Approx(expect).epsilon(1e-9));
    CHECK(contains(K, arg, 1e-7));
    CHECK(c.dot(arg) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("support_min on triangle") {
  Polytope K = triangle();
  auto [v1, a1] = support_min(K, vec2(-1, -1));
  CHECK(v1 == doctest::Approx(-1.0).epsilon(1e-9));  // any diagonal point
  auto [v2, a2] = support_min(K, vec2(-1, 1));
  CHECK(v2 == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK((a2 - vec2(1, 0)).norm() <= 1e-7);
}

TEST_CASE("vertex enumeration: unit square") {
  Polytope K = make_box(vec2(0, 0), vec2(1, 1));
  VertexSet vs = enumerate_vertices(K);
  CHECK(vs.count() == 4);
  CHECK(has_vertex(vs, vec2(0, 0), 1e-9));
  CHECK(has_vertex(vs, vec2(1, 0), 1e-9));
  CHECK(has_vertex(vs, vec2(0, 1), 1e-9));
  CHECK(has_vertex(vs, vec2(1, 1), 1e-9));
}

TEST_CASE("vertex enumeration: triangle and cut square") {
  VertexSet tri = enumerate_vertices(triangle());
  CHECK(tri.count() == 3);
  CHECK(has_vertex(tri, vec2(0, 0), 1e-9));
  CHECK(has_vertex(tri, vec2(1, 0), 1e-9));
  CHECK(has_vertex(tri, vec2(0, 1), 1e-9));

  // Square cut by x + y <= 1.5: a pentagon.
  Eigen::MatrixXd A(1, 2);
  A << 1, 1;
  Eigen::VectorXd b(1);
  b << 1.5;
  Polytope K = make_polytope(A, b, vec2(0, 0), vec2(1, 1));
  VertexSet vs = enumerate_vertices(K);
  CHECK(vs.count() == 5);
  CHECK(has_vertex(vs, vec2(1, 0.5), 1e-9));
  CHECK(has_vertex(vs, vec2(0.5, 1), 1e-9));
  CHECK(!has_vertex(vs, vec2(1, 1), 1e-6));
}

TEST_CASE("vertex enumeration guards") {
  Eigen::VectorXd lo = Eigen::VectorXd::Zero(9);
  Eigen::VectorXd hi = Eigen::VectorXd::Ones(9);
  CHECK_THROWS_AS(enumerate_vertices(make_box(lo, hi)),
                  DimensionTooLargeError);

  // Empty K: row 0'x <= -1 is unsatisfiable.
  Eigen::MatrixXd A(1, 2);
  A << 0, 0;
  Eigen::VectorXd b(1);
  b << -1;
  Polytope empty = make_polytope(A, b, vec2(0, 0), vec2(1, 1));
  CHECK_THROWS_AS(enumerate_vertices(empty), InfeasibleError);
}

TEST_CASE("hypercube vertex count matches 2^n") {
  for (int n = 1; n <= 5; ++n) {
    Polytope K = make_box(Eigen::VectorXd::Zero(n), Eigen::VectorXd::Ones(n));
    CHECK(enumerate_vertices(K).count() == (1 << n));
  }
}

TEST_CASE("diameter and radius of centered box") {
  Polytope K = make_box(vec2(-1, -1), vec2(1, 1));
  auto [D, B] = diameter_and_radius(K);
  CHECK(D == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
  CHECK(B == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(l1_radius(K) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("diameter of triangle") {
  auto [D, B] = diameter_and_radius(triangle());
  CHECK(D == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(B == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(l1_radius(triangle()) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("high-dimension diameter falls back to valid box bounds") {
  const int n = 12;
  Polytope K = make_box(Eigen::VectorXd::Constant(n, -2),
                        Eigen::VectorXd::Constant(n, 2));
  auto [D, B] = diameter_and_radius(K);
  // Exact values for a box; the fallback must be >= them.
  CHECK(D >= 4.0 * std::sqrt(static_cast<double>(n)) - 1e-9);
  CHECK(B >= 2.0 * std::sqrt(static_cast<double>(n)) - 1e-9);
  CHECK(l1_radius(K) >= 2.0 * n - 1e-9);
}

TEST_CASE("log of basis-count bound") {
  // C(4, 2) = 6.
  CHECK(log_vertex_bound(2, 4) == doctest::Approx(std::log(6.0)).epsilon(1e-12));
  // C(3, 1) = 3, C(5, 3) = 10.
  CHECK(log_vertex_bound(1, 3) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(log_vertex_bound(3, 5) ==
        doctest::Approx(std::log(10.0)).epsilon(1e-12));
  // Bound dominates the true hypercube count 2^10 with its 20 facet rows.
  CHECK(log_vertex_bound(10, 20) ==
        doctest::Approx(std::log(184756.0)).epsilon(1e-10));
  CHECK(log_vertex_bound(10, 20) >= 10.0 * std::log(2.0));
  // Ill-posed cases clamp to 0.
  CHECK(log_vertex_bound(5, 5) == 0.0);
  CHECK(log_vertex_bound(5, 3) == 0.0);
}
