// Copyright 2026 The hnep Authors
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

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "hnep/aggregative.hpp"
#include "hnep/error.hpp"
#include "hnep/operator.hpp"
#include "hnep/oracle.hpp"
#include "hnep/solver.hpp"
#include "support.hpp"

using namespace hnep;
using hnep::testing::random_lifted;

namespace {

const OperatorConfig kDefaultOp{0.25, 0.75, 1e15};

GameSpec closed_form() {
  return build_game_spec(hnep::testing::load_shipped("closed_form_m1.json"));
}

// Fixed point of T_alpha from a long baseline run.
LiftedPoint fixed_point(const GameSpec& spec, double tol) {
  SolverConfig cfg;
  cfg.op = kDefaultOp;
  cfg.residual_tol = tol;
  cfg.max_iters = 200000;
  cfg.trace_every = 1000000;
  const SolveResult r = run_fbf(spec, cfg, spec.zero_lifted());
  REQUIRE(r.converged);
  return r.final;
}

// Dual resolvent of gamma * d(iota_D^*) for D = {y <= c} in one dimension:
// argmin_{w >= 0} c w + (w - u)^2 / (2 gamma) by dense grid search.
double dual_resolvent_by_search(double u, double gamma, double c) {
  double best = 0.0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 4000000; ++k) {
    const double w = k * 1e-6;
    const double val = c * w + (w - u) * (w - u) / (2.0 * gamma);
    if (val < best_val) {
      best_val = val;
      best = w;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("OperatorConfig validation") {
  const GameSpec spec = closed_form();  // kappa 2, ||L|| 1
  OperatorConfig op{0.3, 0.5, 1.0};
  CHECK_NOTHROW(op.validate(spec));
  op.gamma = 1.0 / 3.0;
  CHECK_THROWS_AS(op.validate(spec), InvalidParameter);
  op.gamma = 1.0 / 3.0 * (1 - 1e-13);
  CHECK_THROWS_AS(op.validate(spec), InvalidParameter);
  op.gamma = 0.0;
  CHECK_THROWS_AS(op.validate(spec), InvalidParameter);
  op.gamma = 0.3;
  op.alpha = 1.0;
  CHECK_THROWS_AS(op.validate(spec), InvalidParameter);
  op.alpha = 0.0;
  CHECK_THROWS_AS(op.validate(spec), InvalidParameter);
  op.alpha = 0.5;
  op.radius = 0.0;
  CHECK_THROWS_AS(op.validate(spec), InvalidParameter);
  op.radius = std::numeric_limits<double>::infinity();
  CHECK_NOTHROW(op.validate(spec));
}

TEST_CASE("apply_A") {
  SUBCASE("zero operators") {
    const GameSpec spec = hnep::testing::zero_game({2, 1}, 2);
    const LiftedPoint xi{BlockVector({2, 1}, {1, -2, 3}), {4, 5}};
    const LiftedPoint a = apply_A(spec, xi);
    CHECK(a == spec.zero_lifted());
  }
  SUBCASE("closed-form instance") {
    const GameSpec spec = closed_form();
    const LiftedPoint a = apply_A(spec, {BlockVector({1}, {1.0}), {1.0}});
    CHECK(a.x.flat()[0] == doctest::Approx(1.0));
    CHECK(a.u[0] == doctest::Approx(-1.0));
  }
  SUBCASE("monotone on the aggregative instance") {
    const GameSpec spec = build_game_spec(random_instance(4, 6, 3));
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 200; ++rep) {
      const LiftedPoint a = random_lifted(rng, spec, -50, 150);
      const LiftedPoint b = random_lifted(rng, spec, -50, 150);
      const LiftedPoint d = a - b;
      CHECK(dot(apply_A(spec, a) - apply_A(spec, b), d) >=
            -1e-10 * dot(d, d));
    }
  }
}

TEST_CASE("resolvent_B") {
  SUBCASE("whole space primal, 0 in D, u = 0") {
    GameSpec spec = hnep::testing::zero_game({2}, 1);
    spec.shared_proj = [](std::span<const double> y) {
      return project_upper_bound(y, Coords{3.0});
    };
    const LiftedPoint r = resolvent_B(spec, 0.25, {BlockVector({2}, {1, 2}), {0}});
    CHECK(r.x == BlockVector({2}, {1, 2}));
    CHECK(r.u == Coords{0.0});
  }
  SUBCASE("D = whole space sends the dual to zero") {
    const GameSpec spec = hnep::testing::zero_game({1}, 3);
    const LiftedPoint r =
        resolvent_B(spec, 0.7, {BlockVector({1}, {1}), {1.5, -2.0, 1e3}});
    for (double v : r.u) CHECK(v == doctest::Approx(0.0));
  }
  SUBCASE("Moreau identity agrees with a direct minimization") {
    GameSpec spec = hnep::testing::zero_game({1}, 1);
    spec.shared_proj = [](std::span<const double> y) {
      return project_upper_bound(y, Coords{0.5});
    };
    const LiftedPoint r = resolvent_B(spec, 0.25, {BlockVector({1}), {1.0}});
    CHECK(r.u[0] == doctest::Approx(0.875));
    const double searched = dual_resolvent_by_search(1.0, 0.25, 0.5);
    CHECK(searched == doctest::Approx(0.875).epsilon(1e-5));
    CHECK(std::abs(r.u[0] - searched) <= 2e-6);
    // A second point where the constraint is inactive: resolvent is 0.
    const LiftedPoint r2 = resolvent_B(spec, 0.25, {BlockVector({1}), {0.1}});
    CHECK(std::abs(r2.u[0] - dual_resolvent_by_search(0.1, 0.25, 0.5)) <= 2e-6);
  }
  SUBCASE("box projection of the primal part") {
    const GameSpec spec = closed_form();
    const LiftedPoint r = resolvent_B(spec, 0.25, {BlockVector({1}, {12}), {0}});
    CHECK(r.x.flat()[0] == 10.0);
  }
  CHECK_THROWS_AS(resolvent_B(closed_form(), 0.0, closed_form().zero_lifted()),
                  InvalidParameter);
}

TEST_CASE("apply_T_FBF") {
  SUBCASE("reduces to the resolvent when A = 0") {
    const GameSpec spec = hnep::testing::zero_game({2}, 2);
    const OperatorConfig op{0.5, 0.5, {}};
    const LiftedPoint t = apply_T_FBF(spec, op, {BlockVector({2}, {1, -1}), {3, 4}});
    CHECK(t.x == BlockVector({2}, {1, -1}));
    for (double v : t.u) CHECK(v == doctest::Approx(0.0));
  }
  SUBCASE("closed-form fixed point") {
    const GameSpec spec = closed_form();
    const LiftedPoint star{BlockVector({1}, {1.0}), {0.0}};
    const LiftedPoint t = apply_T_FBF(spec, kDefaultOp, star);
    CHECK(t.x.flat()[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(t.u[0]) <= 1e-15);
  }
  SUBCASE("Fejer step toward a computed fixed point") {
    const GameSpec spec = build_game_spec(random_instance(4, 6, 3));
    const LiftedPoint zeta = fixed_point(spec, 1e-12);
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 200; ++rep) {
      const LiftedPoint xi = random_lifted(rng, spec, -50, 150);
      CHECK(norm(apply_T_FBF(spec, kDefaultOp, xi) - zeta) <=
            norm(xi - zeta) + 1e-10);
    }
  }
}

TEST_CASE("composed and step-by-step T_FBF agree") {
  const GameSpec spec = build_game_spec(random_instance(6, 6, 3));
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    const LiftedPoint xi = random_lifted(rng, spec, -50, 150);
    const LiftedPoint a = apply_T_FBF(spec, kDefaultOp, xi);
    const LiftedPoint b = apply_T_FBF_composed(spec, kDefaultOp, xi);
    for (std::size_t k = 0; k < a.x.size(); ++k) {
      CHECK(std::abs(a.x.flat()[k] - b.x.flat()[k]) <= 1e-12);
    }
    for (std::size_t k = 0; k < a.u.size(); ++k) {
      CHECK(std::abs(a.u[k] - b.u[k]) <= 1e-12);
    }
  }
}

TEST_CASE("apply_T_alpha") {
  const GameSpec spec = build_game_spec(random_instance(6, 6, 3));
  std::mt19937_64 rng(4);
  const LiftedPoint xi = random_lifted(rng, spec, -50, 150);
  const LiftedPoint t = apply_T_FBF(spec, kDefaultOp, xi);

  SUBCASE("coordinatewise convex combination for alpha = 0.75") {
    const LiftedPoint ta = apply_T_alpha(spec, kDefaultOp, xi);
    for (std::size_t k = 0; k < ta.x.size(); ++k) {
      CHECK(ta.x.flat()[k] ==
            doctest::Approx(0.25 * xi.x.flat()[k] + 0.75 * t.x.flat()[k]));
    }
    for (std::size_t k = 0; k < ta.u.size(); ++k) {
      CHECK(ta.u[k] == doctest::Approx(0.25 * xi.u[k] + 0.75 * t.u[k]));
    }
  }
  SUBCASE("alpha -> 1 endpoint of the formula is T_FBF") {
    OperatorConfig op = kDefaultOp;
    op.alpha = 1.0;  // formula only; validate() would reject this
    const LiftedPoint ta = apply_T_alpha(spec, op, xi);
    CHECK(norm(ta - t) <= 1e-12 * norm(t));
  }
  SUBCASE("fixed points of T_FBF are fixed by T_alpha") {
    const GameSpec cf = closed_form();
    const LiftedPoint star{BlockVector({1}, {1.0}), {0.0}};
    CHECK(norm(apply_T_alpha(cf, kDefaultOp, star) - star) <= 1e-15);
  }
}

TEST_CASE("apply_clamped") {
  const GameSpec spec = build_game_spec(random_instance(6, 6, 3));
  std::mt19937_64 rng(5);
  const LiftedPoint xi = random_lifted(rng, spec, -50, 150);
  CHECK(apply_clamped(spec, kDefaultOp, xi) == apply_T_alpha(spec, kDefaultOp, xi));

  const GameSpec cf = closed_form();
  const LiftedPoint star{BlockVector({1}, {1.0}), {0.0}};
  OperatorConfig small = kDefaultOp;
  small.radius = 2.0;
  CHECK(norm(apply_clamped(cf, small, star) - star) <= 1e-15);

  const double r = norm(apply_T_alpha(spec, kDefaultOp, xi)) / 2.0;
  OperatorConfig half = kDefaultOp;
  half.radius = r;
  CHECK(norm(apply_clamped(spec, half, xi)) == doctest::Approx(r));

  OperatorConfig none = kDefaultOp;
  none.radius.reset();
  CHECK_THROWS_AS(apply_clamped(spec, none, xi), InvalidParameter);
}

TEST_CASE("T_alpha is strongly attracting and quasi-nonexpansive") {
  const GameSpec spec = build_game_spec(random_instance(12, 6, 3));
  const LiftedPoint zeta = fixed_point(spec, 1e-12);
  const double a = kDefaultOp.alpha;
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 300; ++rep) {
    const LiftedPoint xi = random_lifted(rng, spec, -50, 150);
    const LiftedPoint t = apply_T_alpha(spec, kDefaultOp, xi);
    const double lhs = (1 - a) / a * dot(t - xi, t - xi);
    const double rhs = dot(xi - zeta, xi - zeta) - dot(t - zeta, t - zeta);
    CHECK(lhs <= rhs + 1e-8);
    CHECK(norm(t - zeta) <= norm(xi - zeta) + 1e-10);
  }
}

TEST_CASE("the two residuals vanish together") {
  const GameSpec spec = build_game_spec(random_instance(12, 6, 3));
  const double a = kDefaultOp.alpha;
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 300; ++rep) {
    const LiftedPoint xi = random_lifted(rng, spec, -50, 150);
    const double r_alpha = norm(apply_T_alpha(spec, kDefaultOp, xi) - xi);
    const double r_fbf = norm(apply_T_FBF(spec, kDefaultOp, xi) - xi);
    CHECK(r_alpha <= r_fbf / a * (1 + 1e-12));
    CHECK(r_fbf <= r_alpha / a * (1 + 1e-12));
  }
}
