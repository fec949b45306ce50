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

#ifndef HNEP_AGGREGATIVE_HPP_
#define HNEP_AGGREGATIVE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hnep/game.hpp"
#include "hnep/space.hpp"

namespace hnep {

// Linearly-coupled aggregative game with m players of dimension M each:
//   C_i = prod_j [a_ij, b_ij],
//   f_i(x) = ((1/m) sum_j W x_j - p)^T x_i,
//   L x = sum_i x_i,   D = { y | y <= c },
// and upper-level costs
//   f^u_i(x) = 1/2 (||x_i - t_i||^2 + sum_{j != i} ||x_i - x_j||^2).
// W is diagonal and stored as its diagonal.
struct AggregativeGame {
  std::size_t m = 0;
  std::size_t M = 0;
  std::vector<Coords> a;  // m x M
  std::vector<Coords> b;  // m x M
  Coords c;               // M
  Coords p;               // M
  Coords W_diag;          // M
  std::vector<Coords> t;  // m x M
  std::optional<std::uint64_t> seed;

  // Constants stated by the instance document. When present they replace the
  // closed forms in build_game_spec, so a wrong value reaches the checks.
  std::optional<double> stated_kappa_G;
  std::optional<double> stated_L_norm;

  // Throws InvalidInstance.
  void validate() const;
};

GameSpec build_game_spec(const AggregativeGame& g);

// Spectral norm of the linear part of G, ((m + 1) / m) max_j W_jj.
double compute_kappa_G(const AggregativeGame& g);

// ||L||_op = sqrt(m).
double compute_L_norm(const AggregativeGame& g);

// Draws an instance from a std::mt19937_64 engine seeded with `seed`.
// Fields are drawn in the order a (player-major), p, W_diag, t
// (player-major), each as lo + (hi - lo) * u with u = (e() >> 11) * 2^-53.
// b = 100 and c = 120 everywhere; a_ij in [-1, 1], p_j in [0, 10],
// W_jj in [0, 1], t_ij in [a_ij, b_ij].
AggregativeGame random_instance(std::uint64_t seed, std::size_t m,
                                std::size_t M);

double lower_cost(const AggregativeGame& g, std::size_t i,
                  const BlockVector& x);
double upper_cost(const AggregativeGame& g, std::size_t i,
                  const BlockVector& x);

// JSON document {m, M, a, b, c, p, W_diag, t, seed} plus the optional stated
// constants kappa_G and L_norm. Doubles are written in shortest round-trip
// form, so parse(serialize(g)) reproduces g bit for bit.
std::string serialize_instance(const AggregativeGame& g);
// Throws InvalidInstance on malformed documents or invariant violations.
AggregativeGame parse_instance(std::string_view text);
AggregativeGame load_instance(const std::string& path);
void save_instance(const AggregativeGame& g, const std::string& path);

}  // namespace hnep

#endif  // HNEP_AGGREGATIVE_HPP_
