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

#ifndef HNEP_SOLVER_HPP_
#define HNEP_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hnep/game.hpp"
#include "hnep/operator.hpp"
#include "hnep/space.hpp"

namespace hnep {

// lambda_n = scale / (n + offset). With scale > 0 this tends to zero and is
// not summable, which is all the hybrid steepest descent method asks for.
struct StepsizeSchedule {
  double scale = 1.0;
  double offset = 3.0;

  void validate() const;
};

// lambda_n for n >= 1. Throws InvalidParameter for n < 1.
double schedule_eval(const StepsizeSchedule& s, std::int64_t n);

struct SolverConfig {
  // A missing radius runs the unclamped recursions.
  OperatorConfig op;
  std::optional<StepsizeSchedule> schedule;
  std::size_t max_iters = 100000;
  double residual_tol = 1e-8;
  std::size_t trace_every = 1;
  // Store x_n in trace records.
  bool snapshot_x = false;

  void validate(const GameSpec& spec) const;
};

struct TraceRecord {
  std::size_t n = 0;
  // || (P_ball o T_alpha)(xi_n) - xi_n ||
  double residual = 0.0;
  // Step lambda_{n+1} applied after this record; 0 for the FBF baseline.
  double lambda = 0.0;
  // f^u_i(x_n) for every player, empty if the game has no upper costs.
  Coords upper_costs;
  std::optional<BlockVector> x;
};

struct SolveResult {
  // The last iterate xi_n that was tested by the stopping rule.
  LiftedPoint final;
  std::size_t iterations = 0;
  bool converged = false;
  double final_residual = 0.0;
  std::vector<TraceRecord> trace;
};

// Called with (n, xi_n) once per iteration, before the update.
using IterationObserver =
    std::function<void(std::size_t, const LiftedPoint&)>;

// xi_{n+1} = (P_ball o T_alpha)(xi_n) until the residual drops to
// residual_tol or n reaches max_iters.
SolveResult run_fbf(const GameSpec& spec, const SolverConfig& cfg,
                    const LiftedPoint& xi0,
                    const IterationObserver& observer = {});

// Hybrid steepest descent over the fixed point set:
//   p_n = (P_ball o T_alpha)(xi_n),
//   xi_{n+1} = p_n - lambda_{n+1} (Gu(x of p_n), 0).
// Stops when both the residual and the drift lambda_{n+1} ||Gu(p_n)|| are at
// most residual_tol, or at max_iters.
SolveResult run_hsdm(const GameSpec& spec, const SolverConfig& cfg,
                     const LiftedPoint& xi0,
                     const IterationObserver& observer = {});

}  // namespace hnep

#endif  // HNEP_SOLVER_HPP_
