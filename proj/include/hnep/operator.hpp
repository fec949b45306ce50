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

#ifndef HNEP_OPERATOR_HPP_
#define HNEP_OPERATOR_HPP_

#include <optional>

#include "hnep/game.hpp"
#include "hnep/space.hpp"

namespace hnep {

struct OperatorConfig {
  double gamma = 0.25;
  double alpha = 0.75;
  // Ball radius for the clamped operator; +infinity disables the clamp.
  std::optional<double> radius;

  // Requires 0 < gamma < 1 / (kappa_G + L_norm) with a relative margin of
  // 1e-12, 0 < alpha < 1 and radius > 0. Throws InvalidParameter.
  void validate(const GameSpec& spec) const;

  // Largest admissible gamma for the game, i.e. 1 / (kappa_G + L_norm).
  static double gamma_bound(const GameSpec& spec);
};

// A(x, u) = (G(x) + L* u, -L x).
LiftedPoint apply_A(const GameSpec& spec, const LiftedPoint& xi);

// Resolvent (Id + gamma B)^{-1}. The primal part projects each block onto
// C_i; the dual part uses the Moreau identity u - gamma P_D(u / gamma), so the
// support function of D is never evaluated.
LiftedPoint resolvent_B(const GameSpec& spec, double gamma,
                        const LiftedPoint& xi);

// Tseng's forward-backward-forward operator
//   T_FBF = (Id - gamma A) o (Id + gamma B)^{-1} o (Id - gamma A) + gamma A,
// evaluated step by step as in the per-player algorithm: one forward-backward
// step and one forward step, two pseudo-gradient evaluations in total.
LiftedPoint apply_T_FBF(const GameSpec& spec, const OperatorConfig& cfg,
                        const LiftedPoint& xi);

// The same operator evaluated literally from its composed definition with
// apply_A and resolvent_B (three A evaluations). Reference route for tests.
LiftedPoint apply_T_FBF_composed(const GameSpec& spec,
                                 const OperatorConfig& cfg,
                                 const LiftedPoint& xi);

// T_alpha = (1 - alpha) Id + alpha T_FBF.
LiftedPoint apply_T_alpha(const GameSpec& spec, const OperatorConfig& cfg,
                          const LiftedPoint& xi);

// P_ball o T_alpha. Requires cfg.radius.
LiftedPoint apply_clamped(const GameSpec& spec, const OperatorConfig& cfg,
                          const LiftedPoint& xi);

}  // namespace hnep

#endif  // HNEP_OPERATOR_HPP_
