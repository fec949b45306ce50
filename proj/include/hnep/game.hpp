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

#ifndef HNEP_GAME_HPP_
#define HNEP_GAME_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hnep/space.hpp"

namespace hnep {

// Explicit description of the feasible region
//   { x | lo_i <= x_i <= hi_i for all i, L x <= shared_upper }.
// Only the brute-force and sampling oracles need it; the solvers go through
// the projection oracles.
struct BoxGeometry {
  std::vector<Coords> lo;
  std::vector<Coords> hi;
  Coords shared_upper;
};

// Lower-level game with box-like local sets C_i, a shared set D and a linear
// coupling L : H -> G, together with the optional upper-level layer.
//
// All oracles must be pure. kappa_G bounds the Lipschitz constant of the
// pseudo-gradient and L_norm bounds the operator norm of L; both are supplied
// by the instance builder and checked by the oracle module.
struct GameSpec {
  using BlockGrad = std::function<Coords(std::size_t, const BlockVector&)>;
  using BlockCost = std::function<double(std::size_t, const BlockVector&)>;

  std::vector<std::size_t> dims;
  std::size_t coupling_dim = 0;

  BlockGrad lower_grad;
  std::function<Coords(std::size_t, std::span<const double>)> local_proj;
  std::function<Coords(const BlockVector&)> couple_apply;
  std::function<BlockVector(std::span<const double>)> couple_adjoint;
  std::function<Coords(std::span<const double>)> shared_proj;

  double kappa_G = 0.0;
  double L_norm = 0.0;

  // Optional.
  BlockGrad upper_grad;
  BlockCost lower_cost;
  BlockCost upper_cost;
  std::optional<BoxGeometry> geometry;

  std::size_t num_players() const { return dims.size(); }
  std::size_t total_dim() const;

  // Throw ContractViolation when the argument's shape differs from the game.
  void check_conforms(const BlockVector& x) const;
  void check_conforms(const LiftedPoint& xi) const;

  BlockVector zero_primal() const { return BlockVector(dims); }
  LiftedPoint zero_lifted() const {
    return {BlockVector(dims), Coords(coupling_dim, 0.0)};
  }
};

// G(x) = (grad_1 f_1(x), ..., grad_m f_m(x)).
BlockVector pseudo_gradient(const GameSpec& spec, const BlockVector& x);

// The upper-level pseudo-gradient. Throws UnsupportedOperation when the game
// has no upper layer.
BlockVector upper_pseudo_gradient(const GameSpec& spec, const BlockVector& x);

// (x, u) -> (upper_pseudo_gradient(x), 0).
LiftedPoint lift_upper_gradient(const GameSpec& spec, const LiftedPoint& xi);

// Per-player upper-level costs f^u_i(x), i = 1..m.
Coords upper_costs(const GameSpec& spec, const BlockVector& x);

}  // namespace hnep

#endif  // HNEP_GAME_HPP_
