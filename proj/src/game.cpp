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

#include "hnep/game.hpp"

#include <numeric>
#include <string>

#include "hnep/error.hpp"

namespace hnep {

namespace {

BlockVector stack_blocks(const GameSpec& spec, const BlockVector& x,
                         const GameSpec::BlockGrad& grad) {
  BlockVector out(spec.dims);
  for (std::size_t i = 0; i < spec.num_players(); ++i) {
    const Coords g = grad(i, x);
    if (g.size() != spec.dims[i]) {
      throw ContractViolation("gradient oracle returned block of length " +
                              std::to_string(g.size()) + " for player " +
                              std::to_string(i));
    }
    out.set_block(i, g);
  }
  return out;
}

}  // namespace

std::size_t GameSpec::total_dim() const {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{0});
}

void GameSpec::check_conforms(const BlockVector& x) const {
  if (x.dims() != dims) {
    throw ContractViolation("strategy profile does not match game layout");
  }
}

void GameSpec::check_conforms(const LiftedPoint& xi) const {
  check_conforms(xi.x);
  if (xi.u.size() != coupling_dim) {
    throw ContractViolation("dual part has length " +
                            std::to_string(xi.u.size()) + ", expected " +
                            std::to_string(coupling_dim));
  }
}

BlockVector pseudo_gradient(const GameSpec& spec, const BlockVector& x) {
  spec.check_conforms(x);
  return stack_blocks(spec, x, spec.lower_grad);
}

BlockVector upper_pseudo_gradient(const GameSpec& spec, const BlockVector& x) {
  if (!spec.upper_grad) {
    throw UnsupportedOperation("game has no upper-level gradient oracle");
  }
  spec.check_conforms(x);
  return stack_blocks(spec, x, spec.upper_grad);
}

LiftedPoint lift_upper_gradient(const GameSpec& spec, const LiftedPoint& xi) {
  spec.check_conforms(xi);
  return {upper_pseudo_gradient(spec, xi.x), Coords(spec.coupling_dim, 0.0)};
}

Coords upper_costs(const GameSpec& spec, const BlockVector& x) {
  if (!spec.upper_cost) {
    throw UnsupportedOperation("game has no upper-level cost oracle");
  }
  spec.check_conforms(x);
  Coords out(spec.num_players());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = spec.upper_cost(i, x);
  return out;
}

}  // namespace hnep
