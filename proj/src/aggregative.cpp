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

#include "hnep/aggregative.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>

#include "hnep/error.hpp"
#include "hnep/random.hpp"
#include "json.hpp"

namespace hnep {

namespace {

using nlohmann::json;

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInstance(what);
}

void require_matrix(const std::vector<Coords>& v, std::size_t rows,
                    std::size_t cols, const char* name) {
  require(v.size() == rows, std::string(name) + ": expected " +
                                std::to_string(rows) + " rows");
  for (const Coords& row : v) {
    require(row.size() == cols, std::string(name) + ": expected " +
                                    std::to_string(cols) + " columns");
  }
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double e) { return std::isfinite(e); });
}

// Sum of all blocks, i.e. L x.
Coords aggregate(const BlockVector& x, std::size_t M) {
  Coords s(M, 0.0);
  for (std::size_t i = 0; i < x.num_blocks(); ++i) {
    const auto xi = x.block(i);
    for (std::size_t j = 0; j < M; ++j) s[j] += xi[j];
  }
  return s;
}

}  // namespace

void AggregativeGame::validate() const {
  require(m >= 1 && M >= 1, "m and M must be positive");
  require_matrix(a, m, M, "a");
  require_matrix(b, m, M, "b");
  require_matrix(t, m, M, "t");
  require(c.size() == M && p.size() == M && W_diag.size() == M,
          "c, p and W_diag must have length M");
  for (std::size_t i = 0; i < m; ++i) {
    require(all_finite(a[i]) && all_finite(b[i]) && all_finite(t[i]),
            "non-finite entry in a, b or t");
    for (std::size_t j = 0; j < M; ++j) {
      require(a[i][j] < b[i][j], "a[" + std::to_string(i) + "][" +
                                     std::to_string(j) +
                                     "] must be < b[" + std::to_string(i) +
                                     "][" + std::to_string(j) + "]");
    }
  }
  require(all_finite(c) && all_finite(p) && all_finite(W_diag),
          "non-finite entry in c, p or W_diag");
  for (std::size_t j = 0; j < M; ++j) {
    require(c[j] > 0.0, "c must be positive");
    // p = 0 is allowed: the generator draws p from [0, 10] and G stays an
    // affine monotone map.
    require(p[j] >= 0.0, "p must be nonnegative");
    require(W_diag[j] >= 0.0, "W_diag must be nonnegative");
  }
  if (stated_kappa_G) {
    require(std::isfinite(*stated_kappa_G) && *stated_kappa_G >= 0.0,
            "kappa_G must be finite and nonnegative");
  }
  if (stated_L_norm) {
    require(std::isfinite(*stated_L_norm) && *stated_L_norm >= 0.0,
            "L_norm must be finite and nonnegative");
  }
}

double compute_kappa_G(const AggregativeGame& g) {
  g.validate();
  const double w_max = *std::max_element(g.W_diag.begin(), g.W_diag.end());
  const double m = static_cast<double>(g.m);
  return (m + 1.0) / m * w_max;
}

double compute_L_norm(const AggregativeGame& g) {
  g.validate();
  return std::sqrt(static_cast<double>(g.m));
}

double lower_cost(const AggregativeGame& g, std::size_t i,
                  const BlockVector& x) {
  const Coords s = aggregate(x, g.M);
  const auto xi = x.block(i);
  const double inv_m = 1.0 / static_cast<double>(g.m);
  double f = 0.0;
  for (std::size_t j = 0; j < g.M; ++j) {
    f += (inv_m * g.W_diag[j] * s[j] - g.p[j]) * xi[j];
  }
  return f;
}

double upper_cost(const AggregativeGame& g, std::size_t i,
                  const BlockVector& x) {
  const auto xi = x.block(i);
  double f = 0.0;
  for (std::size_t j = 0; j < g.M; ++j) {
    const double d = xi[j] - g.t[i][j];
    f += d * d;
  }
  for (std::size_t k = 0; k < g.m; ++k) {
    if (k == i) continue;
    const auto xk = x.block(k);
    for (std::size_t j = 0; j < g.M; ++j) {
      const double d = xi[j] - xk[j];
      f += d * d;
    }
  }
  return 0.5 * f;
}

GameSpec build_game_spec(const AggregativeGame& g) {
  g.validate();
  // Oracles share one immutable copy of the instance.
  auto game = std::make_shared<const AggregativeGame>(g);
  const std::size_t M = g.M;
  const double inv_m = 1.0 / static_cast<double>(g.m);

  GameSpec spec;
  spec.dims.assign(g.m, M);
  spec.coupling_dim = M;

  spec.lower_grad = [game, M, inv_m](std::size_t i, const BlockVector& x) {
    const Coords s = aggregate(x, M);
    const auto xi = x.block(i);
    Coords out(M);
    for (std::size_t j = 0; j < M; ++j) {
      out[j] = inv_m * game->W_diag[j] * xi[j] +
               inv_m * game->W_diag[j] * s[j] - game->p[j];
    }
    return out;
  };
  spec.upper_grad = [game, M](std::size_t i, const BlockVector& x) {
    const Coords s = aggregate(x, M);
    const auto xi = x.block(i);
    const double m = static_cast<double>(game->m);
    Coords out(M);
    for (std::size_t j = 0; j < M; ++j) {
      // m x_i - t_i - sum_{k != i} x_k
      out[j] = m * xi[j] - game->t[i][j] - (s[j] - xi[j]);
    }
    return out;
  };
  spec.local_proj = [game](std::size_t i, std::span<const double> v) {
    return project_box(v, game->a.at(i), game->b.at(i));
  };
  spec.couple_apply = [M](const BlockVector& x) { return aggregate(x, M); };
  spec.couple_adjoint = [dims = spec.dims](std::span<const double> u) {
    BlockVector out(dims);
    for (std::size_t i = 0; i < dims.size(); ++i) out.set_block(i, u);
    return out;
  };
  spec.shared_proj = [game](std::span<const double> y) {
    return project_upper_bound(y, game->c);
  };
  spec.lower_cost = [game](std::size_t i, const BlockVector& x) {
    return lower_cost(*game, i, x);
  };
  spec.upper_cost = [game](std::size_t i, const BlockVector& x) {
    return upper_cost(*game, i, x);
  };
  spec.kappa_G = g.stated_kappa_G.value_or(compute_kappa_G(g));
  spec.L_norm = g.stated_L_norm.value_or(compute_L_norm(g));
  spec.geometry = BoxGeometry{g.a, g.b, g.c};
  return spec;
}

AggregativeGame random_instance(std::uint64_t seed, std::size_t m,
                                std::size_t M) {
  if (m < 1 || M < 1) throw InvalidParameter("m and M must be positive");
  std::mt19937_64 engine(seed);
  AggregativeGame g;
  g.m = m;
  g.M = M;
  g.seed = seed;
  g.a.assign(m, Coords(M));
  g.b.assign(m, Coords(M, 100.0));
  g.t.assign(m, Coords(M));
  g.c.assign(M, 120.0);
  g.p.resize(M);
  g.W_diag.resize(M);
  for (auto& row : g.a) {
    for (double& v : row) v = uniform(engine, -1.0, 1.0);
  }
  for (double& v : g.p) v = uniform(engine, 0.0, 10.0);
  for (double& v : g.W_diag) v = uniform(engine, 0.0, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < M; ++j) {
      g.t[i][j] = uniform(engine, g.a[i][j], g.b[i][j]);
    }
  }
  return g;
}

std::string serialize_instance(const AggregativeGame& g) {
  json doc;
  doc["m"] = g.m;
  doc["M"] = g.M;
  doc["a"] = g.a;
  doc["b"] = g.b;
  doc["c"] = g.c;
  doc["p"] = g.p;
  doc["W_diag"] = g.W_diag;
  doc["t"] = g.t;
  doc["seed"] = g.seed ? json(*g.seed) : json(nullptr);
  if (g.stated_kappa_G) doc["kappa_G"] = *g.stated_kappa_G;
  if (g.stated_L_norm) doc["L_norm"] = *g.stated_L_norm;
  return doc.dump(2) + "\n";
}

AggregativeGame parse_instance(std::string_view text) {
  AggregativeGame g;
  try {
    const json doc = json::parse(text);
    g.m = doc.at("m").get<std::size_t>();
    g.M = doc.at("M").get<std::size_t>();
    g.a = doc.at("a").get<std::vector<Coords>>();
    g.b = doc.at("b").get<std::vector<Coords>>();
    g.c = doc.at("c").get<Coords>();
    g.p = doc.at("p").get<Coords>();
    g.W_diag = doc.at("W_diag").get<Coords>();
    g.t = doc.at("t").get<std::vector<Coords>>();
    if (doc.contains("seed") && !doc["seed"].is_null()) {
      g.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("kappa_G")) g.stated_kappa_G = doc["kappa_G"].get<double>();
    if (doc.contains("L_norm")) g.stated_L_norm = doc["L_norm"].get<double>();
  } catch (const json::exception& e) {
    throw InvalidInstance(std::string("malformed instance document: ") +
                          e.what());
  }
  g.validate();
  return g;
}

AggregativeGame load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstance("cannot open instance file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const AggregativeGame& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file " + path);
  out << serialize_instance(g);
}

}  // namespace hnep
