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

#include "hnep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hnep/error.hpp"
#include "hnep/random.hpp"

namespace hnep {

namespace {

// Half-space a . x <= beta.
struct HalfSpace {
  Coords normal;
  double beta;
};

const BoxGeometry& require_geometry(const GameSpec& spec, const char* who) {
  if (!spec.geometry) {
    throw UnsupportedOperation(std::string(who) +
                               ": game has no explicit feasible region");
  }
  return *spec.geometry;
}

Coords flatten(const std::vector<Coords>& rows) {
  Coords out;
  for (const Coords& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

// Rows of L, recovered by applying the coupling oracle to unit vectors.
std::vector<Coords> coupling_rows(const GameSpec& spec) {
  const std::size_t n = spec.total_dim();
  std::vector<Coords> rows(spec.coupling_dim, Coords(n, 0.0));
  Coords e(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = 1.0;
    const Coords col = spec.couple_apply(BlockVector(spec.dims, e));
    for (std::size_t r = 0; r < spec.coupling_dim; ++r) rows[r][k] = col[r];
    e[k] = 0.0;
  }
  return rows;
}

std::vector<HalfSpace> feasible_halfspaces(const GameSpec& spec,
                                           const BoxGeometry& geo) {
  const Coords lo = flatten(geo.lo);
  const Coords hi = flatten(geo.hi);
  const std::size_t n = lo.size();
  std::vector<HalfSpace> out;
  for (std::size_t k = 0; k < n; ++k) {
    Coords e(n, 0.0);
    e[k] = -1.0;
    out.push_back({e, -lo[k]});
    e[k] = 1.0;
    out.push_back({e, hi[k]});
  }
  const auto rows = coupling_rows(spec);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.push_back({rows[r], geo.shared_upper.at(r)});
  }
  return out;
}

bool satisfies(const std::vector<HalfSpace>& hs, std::span<const double> x,
               double slack) {
  return std::all_of(hs.begin(), hs.end(), [&](const HalfSpace& h) {
    return dot(h.normal, x) <= h.beta + slack * (1.0 + std::abs(h.beta));
  });
}

// Solves the square system by Gaussian elimination with partial pivoting.
std::optional<Coords> solve_dense(std::vector<Coords> a, Coords b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-12) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  Coords x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

// Vertices of the bounded polytope, by intersecting every n-subset of the
// bounding hyperplanes. Fine for n <= 3.
std::vector<Coords> polytope_vertices(const std::vector<HalfSpace>& hs,
                                      std::size_t n) {
  std::vector<Coords> out;
  std::vector<bool> pick(hs.size(), false);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(n), pick.end(), true);
  do {
    std::vector<Coords> a;
    Coords b;
    for (std::size_t k = 0; k < hs.size(); ++k) {
      if (!pick[k]) continue;
      a.push_back(hs[k].normal);
      b.push_back(hs[k].beta);
    }
    auto v = solve_dense(std::move(a), std::move(b));
    if (v && satisfies(hs, *v, 1e-9)) out.push_back(std::move(*v));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

// Euclidean projection onto the polytope: the closest feasible point among
// the projections onto the affine sets spanned by every subset of at most n
// bounding hyperplanes. Fine for n <= 3.
Coords project_polytope(const std::vector<HalfSpace>& hs, const Coords& z) {
  const std::size_t n = z.size();
  Coords best;
  double best_dist = std::numeric_limits<double>::infinity();
  auto consider = [&](const Coords& x) {
    if (!satisfies(hs, x, 1e-9)) return;
    Coords d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = x[k] - z[k];
    const double dist = norm(d);
    if (dist < best_dist) {
      best_dist = dist;
      best = x;
    }
  };
  consider(z);
  for (std::size_t size = 1; size <= std::min(n, hs.size()); ++size) {
    std::vector<bool> pick(hs.size(), false);
    std::fill(pick.end() - static_cast<std::ptrdiff_t>(size), pick.end(), true);
    do {
      std::vector<const HalfSpace*> rows;
      for (std::size_t k = 0; k < hs.size(); ++k) {
        if (pick[k]) rows.push_back(&hs[k]);
      }
      std::vector<Coords> gram(size, Coords(size));
      Coords rhs(size);
      for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) {
          gram[r][c] = dot(rows[r]->normal, rows[c]->normal);
        }
        rhs[r] = dot(rows[r]->normal, z) - rows[r]->beta;
      }
      const auto mult = solve_dense(std::move(gram), std::move(rhs));
      if (!mult) continue;
      Coords x = z;
      for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
          x[k] -= (*mult)[r] * rows[r]->normal[k];
        }
      }
      consider(x);
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  return best;
}

Coords random_in_box(std::mt19937_64& engine, std::span<const double> lo,
                     std::span<const double> hi) {
  Coords out(lo.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = uniform(engine, lo[k], hi[k]);
  }
  return out;
}

// The bounding box of the feasible region doubled about its center, or
// [-1, 1]^n without geometry.
void sampling_box(const GameSpec& spec, Coords& lo, Coords& hi) {
  const std::size_t n = spec.total_dim();
  if (!spec.geometry) {
    lo.assign(n, -1.0);
    hi.assign(n, 1.0);
    return;
  }
  lo = flatten(spec.geometry->lo);
  hi = flatten(spec.geometry->hi);
  for (std::size_t k = 0; k < n; ++k) {
    const double half = 0.5 * (hi[k] - lo[k]);
    lo[k] -= half;
    hi[k] += half;
  }
}

double rel_max_error(std::span<const double> approx,
                     std::span<const double> exact) {
  double err = 0.0;
  double scale = 1.0;
  for (std::size_t k = 0; k < exact.size(); ++k) {
    err = std::max(err, std::abs(approx[k] - exact[k]));
    scale = std::max(scale, std::abs(exact[k]));
  }
  return err / scale;
}

CheckReport finish(std::string name, double worst, double tol,
                   std::size_t samples) {
  return {std::move(name), worst <= tol, worst, tol, samples};
}

}  // namespace

Coords finite_diff_gradient(const CostOracle& cost, std::size_t i,
                            const BlockVector& x, double h) {
  if (!(h > 0.0)) throw InvalidParameter("finite difference step must be > 0");
  BlockVector probe = x;
  Coords out(x.block_dim(i));
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double orig = x.block(i)[k];
    probe.block(i)[k] = orig + h;
    const double plus = cost(i, probe);
    probe.block(i)[k] = orig - h;
    const double minus = cost(i, probe);
    probe.block(i)[k] = orig;
    out[k] = (plus - minus) / (2.0 * h);
  }
  return out;
}

double ve_fixed_point_residual(const GameSpec& spec, const OperatorConfig& cfg,
                               const LiftedPoint& xi) {
  return norm(apply_T_alpha(spec, cfg, xi) - xi);
}

CheckReport vi_certificate(const GameSpec& spec, const BlockVector& x_star,
                           std::span<const BlockVector> samples, double tol) {
  if (samples.empty()) {
    throw InvalidParameter("vi_certificate: empty sample list");
  }
  const BlockVector g = upper_pseudo_gradient(spec, x_star);
  double worst = -std::numeric_limits<double>::infinity();
  for (const BlockVector& w : samples) {
    const BlockVector d = w - x_star;
    worst = std::max(worst, -dot(g, d) / (1.0 + norm(d)));
  }
  return finish("vi_certificate", worst, tol, samples.size());
}

std::vector<LiftedPoint> sample_variational_equilibria(
    const GameSpec& spec, const SolverConfig& cfg, std::size_t starts,
    std::uint64_t seed) {
  require_geometry(spec, "sample_variational_equilibria");
  Coords lo, hi;
  sampling_box(spec, lo, hi);
  std::mt19937_64 engine(seed);
  OperatorConfig plain = cfg.op;
  plain.radius.reset();

  std::vector<LiftedPoint> out;
  for (std::size_t s = 0; s < starts; ++s) {
    LiftedPoint xi0{BlockVector(spec.dims, random_in_box(engine, lo, hi)),
                    Coords(spec.coupling_dim)};
    for (double& v : xi0.u) v = uniform(engine, 0.0, 1.0);
    const SolveResult r = run_fbf(spec, cfg, xi0);
    if (!r.converged || ve_fixed_point_residual(spec, plain, r.final) > 1e-8) {
      continue;
    }
    const bool duplicate =
        std::any_of(out.begin(), out.end(), [&](const LiftedPoint& p) {
          return norm(p.x - r.final.x) < 1e-6;
        });
    if (!duplicate) out.push_back(r.final);
  }
  return out;
}

std::vector<BlockVector> brute_force_ve(const GameSpec& spec,
                                        double grid_step) {
  if (!(grid_step > 0.0)) throw InvalidParameter("grid_step must be > 0");
  const std::size_t n = spec.total_dim();
  if (n > 3) {
    throw UnsupportedOperation("brute_force_ve: total dimension " +
                               std::to_string(n) + " exceeds 3");
  }
  const BoxGeometry& geo = require_geometry(spec, "brute_force_ve");
  const Coords lo = flatten(geo.lo);
  const Coords hi = flatten(geo.hi);
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(lo[k]) || !std::isfinite(hi[k])) {
      throw UnsupportedOperation("brute_force_ve: unbounded box");
    }
  }
  const auto hs = feasible_halfspaces(spec, geo);
  const auto vertices = polytope_vertices(hs, n);
  if (vertices.empty()) return {};

  double diam = 0.0;
  double g_max = 0.0;
  for (const Coords& v : vertices) {
    for (const Coords& w : vertices) {
      Coords d(n);
      for (std::size_t k = 0; k < n; ++k) d[k] = v[k] - w[k];
      diam = std::max(diam, norm(d));
    }
    g_max = std::max(g_max, norm(pseudo_gradient(spec, BlockVector(spec.dims, v))));
  }
  // Every equilibrium has a feasible grid point within sqrt(n) grid_step
  // (round each coordinate toward lo), and the natural residual is
  // (2 + kappa_G)-Lipschitz. A natural residual r implies
  // <G(x), w - x> >= -r (diam + ||G(x)||), which gives a cheap prefilter.
  const double tol_grid = (2.0 + spec.kappa_G) *
                          std::sqrt(static_cast<double>(n)) * grid_step;
  const double tol_pre = tol_grid * (diam + g_max) * (1.0 + 1e-9);

  std::vector<std::size_t> counts(n);
  for (std::size_t k = 0; k < n; ++k) {
    counts[k] = static_cast<std::size_t>(
                    std::floor((hi[k] - lo[k]) / grid_step + 1e-9)) + 1;
  }

  std::vector<BlockVector> out;
  std::vector<std::size_t> idx(n, 0);
  Coords x(n);
  while (true) {
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = lo[k] + static_cast<double>(idx[k]) * grid_step;
    }
    if (satisfies(hs, x, 1e-12)) {
      BlockVector bx(spec.dims, x);
      const BlockVector g = pseudo_gradient(spec, bx);
      double worst = std::numeric_limits<double>::infinity();
      const double gx = dot(g.flat(), x);
      for (const Coords& v : vertices) {
        worst = std::min(worst, dot(g.flat(), v) - gx);
      }
      if (worst >= -tol_pre) {
        Coords step(n);
        for (std::size_t k = 0; k < n; ++k) step[k] = x[k] - g.flat()[k];
        const Coords p = project_polytope(hs, step);
        Coords r(n);
        for (std::size_t k = 0; k < n; ++k) r[k] = x[k] - p[k];
        if (norm(r) <= tol_grid) out.push_back(std::move(bx));
      }
    }
    std::size_t k = 0;
    while (k < n && ++idx[k] == counts[k]) idx[k++] = 0;
    if (k == n) break;
  }
  return out;
}

std::vector<CheckReport> run_property_suite(const GameSpec& spec,
                                            const PropertySuiteOptions& opts) {
  std::mt19937_64 engine(opts.seed);
  Coords lo, hi;
  sampling_box(spec, lo, hi);
  auto draw = [&] {
    return BlockVector(spec.dims, random_in_box(engine, lo, hi));
  };
  auto draw_dual = [&] {
    Coords u(spec.coupling_dim);
    for (double& v : u) v = uniform(engine, -1.0, 1.0);
    return u;
  };

  std::vector<CheckReport> reports;
  const std::size_t pairs = opts.pair_samples;

  {
    double worst = 0.0;
    for (std::size_t s = 0; s < pairs; ++s) {
      const BlockVector x = draw();
      const Coords y = draw_dual();
      const double lhs = dot(spec.couple_apply(x), y);
      const double rhs = dot(x, spec.couple_adjoint(y));
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
    reports.push_back(finish("adjoint", worst, 1e-10, pairs));
  }
  {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < pairs; ++s) {
      const BlockVector x = draw();
      const double nx = norm(x);
      if (nx == 0.0) continue;
      worst = std::max(worst, norm(spec.couple_apply(x)) / nx - spec.L_norm);
    }
    reports.push_back(finish("coupling_norm", worst, 1e-8, pairs));
  }
  {
    double worst_lip = -std::numeric_limits<double>::infinity();
    double worst_mono = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < pairs; ++s) {
      const BlockVector x = draw();
      const BlockVector y = draw();
      const BlockVector d = x - y;
      const double nd = norm(d);
      if (nd == 0.0) continue;
      const BlockVector dg = pseudo_gradient(spec, x) - pseudo_gradient(spec, y);
      worst_lip = std::max(worst_lip, norm(dg) / nd - spec.kappa_G);
      worst_mono = std::max(worst_mono, -dot(dg, d) / (nd * nd));
    }
    reports.push_back(finish("lipschitz", worst_lip, 1e-8, pairs));
    reports.push_back(finish("monotone", worst_mono, 1e-10, pairs));
  }
  if (spec.upper_grad) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < pairs; ++s) {
      const BlockVector x = draw();
      const BlockVector y = draw();
      const BlockVector d = x - y;
      const double nd = norm(d);
      if (nd == 0.0) continue;
      const BlockVector dg =
          upper_pseudo_gradient(spec, x) - upper_pseudo_gradient(spec, y);
      worst = std::max(worst, -dot(dg, d) / (nd * nd));
    }
    reports.push_back(finish("upper_monotone", worst, 1e-10, pairs));
  }

  auto gradient_check = [&](const char* name, const CostOracle& cost,
                            const GameSpec::BlockGrad& grad) {
    double worst = 0.0;
    for (std::size_t s = 0; s < opts.gradient_points; ++s) {
      const BlockVector x = draw();
      for (std::size_t i = 0; i < spec.num_players(); ++i) {
        const Coords fd = finite_diff_gradient(cost, i, x, opts.fd_step);
        worst = std::max(worst, rel_max_error(fd, grad(i, x)));
      }
    }
    reports.push_back(finish(name, worst, 1e-6, opts.gradient_points));
  };
  if (spec.lower_cost) {
    gradient_check("lower_gradient", spec.lower_cost, spec.lower_grad);
  }
  if (spec.upper_cost && spec.upper_grad) {
    gradient_check("upper_gradient", spec.upper_cost, spec.upper_grad);
  }

  if (opts.op) {
    const double excess = opts.op->gamma * (spec.kappa_G + spec.L_norm) - 1.0;
    reports.push_back(finish("gamma_admissible", excess, -1e-12, 1));
  }
  return reports;
}

}  // namespace hnep
