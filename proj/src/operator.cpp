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

#include "hnep/operator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hnep/error.hpp"

namespace hnep {

namespace {

constexpr double kGammaMargin = 1e-12;

Coords scaled(std::span<const double> v, double s) {
  Coords out(v.begin(), v.end());
  for (double& e : out) e *= s;
  return out;
}

Coords coupled(const GameSpec& spec, const BlockVector& x) {
  Coords lx = spec.couple_apply(x);
  if (lx.size() != spec.coupling_dim) {
    throw ContractViolation("coupling oracle returned wrong dimension");
  }
  return lx;
}

}  // namespace

double OperatorConfig::gamma_bound(const GameSpec& spec) {
  const double s = spec.kappa_G + spec.L_norm;
  if (s <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / s;
}

void OperatorConfig::validate(const GameSpec& spec) const {
  const double bound = gamma_bound(spec);
  if (!(gamma > 0.0) || !(gamma < bound * (1.0 - kGammaMargin))) {
    throw InvalidParameter("gamma = " + std::to_string(gamma) +
                           " must lie in (0, " + std::to_string(bound) + ")");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidParameter("alpha must lie in (0, 1)");
  }
  if (radius && !(*radius > 0.0)) {
    throw InvalidParameter("radius must be positive");
  }
}

LiftedPoint apply_A(const GameSpec& spec, const LiftedPoint& xi) {
  spec.check_conforms(xi);
  LiftedPoint out{pseudo_gradient(spec, xi.x), coupled(spec, xi.x)};
  out.x += spec.couple_adjoint(xi.u);
  for (double& v : out.u) v = -v;
  return out;
}

LiftedPoint resolvent_B(const GameSpec& spec, double gamma,
                        const LiftedPoint& xi) {
  if (!(gamma > 0.0)) throw InvalidParameter("resolvent_B: gamma must be > 0");
  spec.check_conforms(xi);
  LiftedPoint out{BlockVector(spec.dims), xi.u};
  for (std::size_t i = 0; i < spec.num_players(); ++i) {
    out.x.set_block(i, spec.local_proj(i, xi.x.block(i)));
  }
  const Coords pd = spec.shared_proj(scaled(xi.u, 1.0 / gamma));
  for (std::size_t k = 0; k < out.u.size(); ++k) out.u[k] -= gamma * pd[k];
  return out;
}

LiftedPoint apply_T_FBF(const GameSpec& spec, const OperatorConfig& cfg,
                        const LiftedPoint& xi) {
  spec.check_conforms(xi);
  const double gamma = cfg.gamma;
  const BlockVector& x = xi.x;
  const Coords& u = xi.u;

  // Forward-backward step. forward_x = G(x) + L* u is reused below.
  BlockVector forward_x = pseudo_gradient(spec, x);
  forward_x += spec.couple_adjoint(u);
  const Coords lx = coupled(spec, x);

  BlockVector y(spec.dims);
  for (std::size_t i = 0; i < spec.num_players(); ++i) {
    Coords v(x.block(i).begin(), x.block(i).end());
    const auto f = forward_x.block(i);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= gamma * f[k];
    y.set_block(i, spec.local_proj(i, v));
  }
  Coords arg(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) arg[k] = u[k] / gamma + lx[k];
  const Coords pd = spec.shared_proj(arg);
  Coords w(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    w[k] = u[k] + gamma * lx[k] - gamma * pd[k];
  }

  // Forward step.
  BlockVector forward_y = pseudo_gradient(spec, y);
  forward_y += spec.couple_adjoint(w);
  const Coords ly = coupled(spec, y);

  LiftedPoint out{std::move(y), std::move(w)};
  out.x.axpy(-gamma, forward_y);
  out.x.axpy(gamma, forward_x);
  for (std::size_t k = 0; k < out.u.size(); ++k) {
    out.u[k] += gamma * (ly[k] - lx[k]);
  }
  return out;
}

LiftedPoint apply_T_FBF_composed(const GameSpec& spec,
                                 const OperatorConfig& cfg,
                                 const LiftedPoint& xi) {
  const double gamma = cfg.gamma;
  const LiftedPoint a_xi = apply_A(spec, xi);
  LiftedPoint forward = xi;
  forward.axpy(-gamma, a_xi);
  LiftedPoint r = resolvent_B(spec, gamma, forward);
  const LiftedPoint a_r = apply_A(spec, r);
  r.axpy(-gamma, a_r);
  r.axpy(gamma, apply_A(spec, xi));
  return r;
}

LiftedPoint apply_T_alpha(const GameSpec& spec, const OperatorConfig& cfg,
                          const LiftedPoint& xi) {
  LiftedPoint out = (1.0 - cfg.alpha) * xi;
  out.axpy(cfg.alpha, apply_T_FBF(spec, cfg, xi));
  return out;
}

LiftedPoint apply_clamped(const GameSpec& spec, const OperatorConfig& cfg,
                          const LiftedPoint& xi) {
  if (!cfg.radius) {
    throw InvalidParameter("apply_clamped: operator config has no radius");
  }
  return project_ball(apply_T_alpha(spec, cfg, xi), *cfg.radius);
}

}  // namespace hnep
