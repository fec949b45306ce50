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

#include "hnep/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hnep/error.hpp"

namespace hnep {

void StepsizeSchedule::validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidParameter("stepsize scale must be positive and finite");
  }
  if (!(offset >= 0.0) || !std::isfinite(offset)) {
    throw InvalidParameter("stepsize offset must be nonnegative and finite");
  }
}

double schedule_eval(const StepsizeSchedule& s, std::int64_t n) {
  if (n < 1) {
    throw InvalidParameter("stepsize index must be >= 1, got " +
                           std::to_string(n));
  }
  return s.scale / (static_cast<double>(n) + s.offset);
}

void SolverConfig::validate(const GameSpec& spec) const {
  op.validate(spec);
  if (schedule) schedule->validate();
  if (!(residual_tol >= 0.0)) {
    throw InvalidParameter("residual_tol must be nonnegative");
  }
  if (trace_every == 0) throw InvalidParameter("trace_every must be >= 1");
}

namespace {

OperatorConfig clamped_config(const SolverConfig& cfg) {
  OperatorConfig op = cfg.op;
  if (!op.radius) op.radius = std::numeric_limits<double>::infinity();
  return op;
}

// Shared driver. `step` maps (n, xi_n, p_n = clamped(xi_n)) to the next
// iterate, and reports the stepsize and whether its own stopping condition
// holds.
struct StepOutcome {
  double lambda = 0.0;
  bool drift_small = true;
};

template <typename Step>
SolveResult iterate(const GameSpec& spec, const SolverConfig& cfg,
                    const LiftedPoint& xi0, const IterationObserver& observer,
                    Step&& step) {
  cfg.validate(spec);
  spec.check_conforms(xi0);
  const OperatorConfig op = clamped_config(cfg);
  const bool with_costs = static_cast<bool>(spec.upper_cost);

  SolveResult result;
  LiftedPoint xi = xi0;
  for (std::size_t n = 0;; ++n) {
    if (observer) observer(n, xi);
    LiftedPoint p = apply_clamped(spec, op, xi);
    const double residual = norm(p - xi);
    const bool last_allowed = n >= cfg.max_iters;

    LiftedPoint next;
    StepOutcome outcome = step(n, p, next);
    const bool converged = residual <= cfg.residual_tol && outcome.drift_small;
    const bool stop = converged || last_allowed;

    if (n % cfg.trace_every == 0 || stop) {
      TraceRecord rec;
      rec.n = n;
      rec.residual = residual;
      rec.lambda = outcome.lambda;
      if (with_costs) rec.upper_costs = upper_costs(spec, xi.x);
      if (cfg.snapshot_x) rec.x = xi.x;
      result.trace.push_back(std::move(rec));
    }
    if (stop) {
      result.final = std::move(xi);
      result.iterations = n;
      result.converged = converged;
      result.final_residual = residual;
      return result;
    }
    xi = std::move(next);
  }
}

}  // namespace

SolveResult run_fbf(const GameSpec& spec, const SolverConfig& cfg,
                    const LiftedPoint& xi0, const IterationObserver& observer) {
  return iterate(spec, cfg, xi0, observer,
                 [](std::size_t, LiftedPoint& p, LiftedPoint& next) {
                   next = std::move(p);
                   return StepOutcome{};
                 });
}

SolveResult run_hsdm(const GameSpec& spec, const SolverConfig& cfg,
                     const LiftedPoint& xi0,
                     const IterationObserver& observer) {
  if (!spec.upper_grad) {
    throw UnsupportedOperation("run_hsdm: game has no upper-level gradient");
  }
  if (!cfg.schedule) {
    throw UnsupportedOperation("run_hsdm: no stepsize schedule configured");
  }
  const StepsizeSchedule schedule = *cfg.schedule;
  const double tol = cfg.residual_tol;
  return iterate(
      spec, cfg, xi0, observer,
      [&](std::size_t n, LiftedPoint& p, LiftedPoint& next) {
        const double lambda =
            schedule_eval(schedule, static_cast<std::int64_t>(n) + 1);
        const LiftedPoint g = lift_upper_gradient(spec, p);
        StepOutcome outcome{lambda, lambda * norm(g) <= tol};
        next = std::move(p);
        next.axpy(-lambda, g);
        return outcome;
      });
}

}  // namespace hnep
