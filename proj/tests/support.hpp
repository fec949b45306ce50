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

// Test-only helpers: shipped instances, hand-built games and independent
// numerical oracles. Nothing here calls into the code paths it is used to
// check.

#ifndef HNEP_TESTS_SUPPORT_HPP_
#define HNEP_TESTS_SUPPORT_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hnep/aggregative.hpp"
#include "hnep/game.hpp"
#include "hnep/random.hpp"
#include "hnep/space.hpp"

namespace hnep::testing {

inline std::string instance_path(const std::string& name) {
  return std::string(HNEP_INSTANCE_DIR) + "/" + name;
}

inline AggregativeGame load_shipped(const std::string& name) {
  return load_instance(instance_path(name));
}

// Small instances with total dimension <= 3.
inline const std::vector<std::string>& small_instances() {
  static const std::vector<std::string> names = {
      "closed_form_m1.json", "binding_m1_M2.json", "segment_m2_M1.json",
      "shared_m3_M1.json"};
  return names;
}

// The seed of the shipped m = 6, M = 3 instance.
inline constexpr std::uint64_t kShippedSeed = HNEP_SHIPPED_SEED;

// Unconstrained game with G = 0 and L = 0: C_i = H_i, D = G.
inline GameSpec zero_game(std::vector<std::size_t> dims, std::size_t dim_g) {
  GameSpec s;
  s.dims = dims;
  s.coupling_dim = dim_g;
  s.lower_grad = [dims](std::size_t i, const BlockVector&) {
    return Coords(dims[i], 0.0);
  };
  s.local_proj = [](std::size_t, std::span<const double> v) {
    return Coords(v.begin(), v.end());
  };
  s.couple_apply = [dim_g](const BlockVector&) { return Coords(dim_g, 0.0); };
  s.couple_adjoint = [dims](std::span<const double>) {
    return BlockVector(dims);
  };
  s.shared_proj = [](std::span<const double> y) {
    return Coords(y.begin(), y.end());
  };
  s.upper_grad = [dims](std::size_t i, const BlockVector&) {
    return Coords(dims[i], 0.0);
  };
  return s;
}

inline Coords random_coords(std::mt19937_64& rng, std::size_t n, double lo,
                            double hi) {
  Coords v(n);
  for (double& e : v) e = uniform(rng, lo, hi);
  return v;
}

inline LiftedPoint random_lifted(std::mt19937_64& rng, const GameSpec& spec,
                                 double lo, double hi) {
  return {BlockVector(spec.dims, random_coords(rng, spec.total_dim(), lo, hi)),
          random_coords(rng, spec.coupling_dim, lo, hi)};
}

// Central-difference derivative of a scalar function of one coordinate of
// block i, written independently of the library's finite-difference oracle.
inline double partial(const std::function<double(const BlockVector&)>& f,
                      BlockVector x, std::size_t i, std::size_t k,
                      double h = 1e-6) {
  const double x0 = x.block(i)[k];
  x.block(i)[k] = x0 + h;
  const double fp = f(x);
  x.block(i)[k] = x0 - h;
  const double fm = f(x);
  return (fp - fm) / (2.0 * h);
}

// Largest singular value of a linear map R^n -> R^k by power iteration on
// A^T A.
inline double power_iteration_norm(
    const std::function<Coords(const Coords&)>& apply,
    const std::function<Coords(const Coords&)>& apply_t, std::size_t n,
    int iters = 2000) {
  Coords v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = 1.0 + 0.1 * static_cast<double>(k);
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    Coords w = apply_t(apply(v));
    double nw = 0.0;
    for (double e : w) nw += e * e;
    nw = std::sqrt(nw);
    if (nw == 0.0) return 0.0;
    for (std::size_t k = 0; k < n; ++k) v[k] = w[k] / nw;
    lambda = nw;
  }
  return std::sqrt(lambda);
}

}  // namespace hnep::testing

#endif  // HNEP_TESTS_SUPPORT_HPP_
