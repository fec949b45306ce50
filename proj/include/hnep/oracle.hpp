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

#ifndef HNEP_ORACLE_HPP_
#define HNEP_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hnep/game.hpp"
#include "hnep/operator.hpp"
#include "hnep/solver.hpp"
#include "hnep/space.hpp"

namespace hnep {

// Outcome of one verification check. passed <=> worst_violation <= tolerance.
struct CheckReport {
  std::string name;
  bool passed = false;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
};

using CostOracle = std::function<double(std::size_t, const BlockVector&)>;

// Two-sided central differences of cost(i, .) with respect to block i.
Coords finite_diff_gradient(const CostOracle& cost, std::size_t i,
                            const BlockVector& x, double h);

// ||T_alpha(xi) - xi||.
double ve_fixed_point_residual(const GameSpec& spec, const OperatorConfig& cfg,
                               const LiftedPoint& xi);

// Sampled certificate that x_star solves the upper-level VI over the set of
// variational equilibria: for every sample w,
//   <Gu(x_star), w - x_star> >= -tol (1 + ||w - x_star||).
// The reported violation is max_w -<Gu(x_star), w - x_star> / (1 + ||w -
// x_star||). Throws InvalidParameter on an empty sample list.
CheckReport vi_certificate(const GameSpec& spec, const BlockVector& x_star,
                           std::span<const BlockVector> samples,
                           double tol = 1e-4);

// Runs the FBF baseline from `starts` random points, drawn uniformly from the
// box twice the size of the feasible region's bounding box (dual part
// uniform on [0, 1]), keeps the runs whose limit has fixed-point residual at
// most 1e-8 and drops duplicates closer than 1e-6. Requires spec.geometry.
std::vector<LiftedPoint> sample_variational_equilibria(
    const GameSpec& spec, const SolverConfig& cfg, std::size_t starts,
    std::uint64_t seed);

// Every grid point x of the feasible region whose natural residual
//   ||x - P_F(x - G(x))||
// is at most tol_grid = (2 + kappa_G) sqrt(n) grid_step. The residual
// vanishes exactly when <G(x), w - x> >= 0 for every feasible w, and the
// tolerance is large enough to keep a grid point next to every exact
// equilibrium. Requires spec.geometry and total dimension <= 3; throws
// UnsupportedOperation otherwise.
std::vector<BlockVector> brute_force_ve(const GameSpec& spec,
                                        double grid_step);

struct PropertySuiteOptions {
  std::size_t pair_samples = 1000;
  std::size_t gradient_points = 100;
  double fd_step = 1e-5;
  std::uint64_t seed = 0;
  // When set, gamma admissibility is checked as well.
  std::optional<OperatorConfig> op;
};

// Adjoint consistency, coupling norm bound, Lipschitz bound and monotonicity
// of G, monotonicity of the upper pseudo-gradient, finite-difference checks
// of both gradient oracles and (optionally) gamma admissibility. Checks whose
// oracles are missing are skipped.
std::vector<CheckReport> run_property_suite(const GameSpec& spec,
                                            const PropertySuiteOptions& opts);

}  // namespace hnep

#endif  // HNEP_ORACLE_HPP_
