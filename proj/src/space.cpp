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

#include "hnep/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hnep/error.hpp"

namespace hnep {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ContractViolation(std::string(what) + ": length " +
                            std::to_string(a) + " vs " + std::to_string(b));
  }
}

void require_same_layout(const BlockVector& a, const BlockVector& b) {
  if (!a.same_layout(b)) {
    throw ContractViolation("BlockVector: block layouts differ");
  }
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size(), "dot");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

BlockVector::BlockVector(std::vector<std::size_t> dims)
    : dims_(std::move(dims)) {
  offsets_.reserve(dims_.size() + 1);
  offsets_.push_back(0);
  for (std::size_t d : dims_) offsets_.push_back(offsets_.back() + d);
  data_.assign(offsets_.back(), 0.0);
}

BlockVector::BlockVector(std::vector<std::size_t> dims, Coords flat)
    : BlockVector(std::move(dims)) {
  require_same_length(flat.size(), data_.size(), "BlockVector");
  data_ = std::move(flat);
}

std::span<double> BlockVector::block(std::size_t i) {
  return std::span<double>(data_).subspan(offsets_.at(i), dims_.at(i));
}

std::span<const double> BlockVector::block(std::size_t i) const {
  return std::span<const double>(data_).subspan(offsets_.at(i), dims_.at(i));
}

void BlockVector::set_block(std::size_t i, std::span<const double> values) {
  auto dst = block(i);
  require_same_length(values.size(), dst.size(), "set_block");
  std::copy(values.begin(), values.end(), dst.begin());
}

BlockVector& BlockVector::operator+=(const BlockVector& other) {
  return axpy(1.0, other);
}

BlockVector& BlockVector::operator-=(const BlockVector& other) {
  return axpy(-1.0, other);
}

BlockVector& BlockVector::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

BlockVector& BlockVector::axpy(double s, const BlockVector& other) {
  require_same_layout(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * other.data_[k];
  return *this;
}

BlockVector operator+(BlockVector a, const BlockVector& b) { return a += b; }
BlockVector operator-(BlockVector a, const BlockVector& b) { return a -= b; }
BlockVector operator*(double s, BlockVector a) { return a *= s; }

double dot(const BlockVector& a, const BlockVector& b) {
  require_same_layout(a, b);
  return dot(a.flat(), b.flat());
}

double norm(const BlockVector& a) { return norm(a.flat()); }

LiftedPoint& LiftedPoint::operator+=(const LiftedPoint& other) {
  return axpy(1.0, other);
}

LiftedPoint& LiftedPoint::operator-=(const LiftedPoint& other) {
  return axpy(-1.0, other);
}

LiftedPoint& LiftedPoint::operator*=(double s) {
  x *= s;
  for (double& v : u) v *= s;
  return *this;
}

LiftedPoint& LiftedPoint::axpy(double s, const LiftedPoint& other) {
  require_same_length(u.size(), other.u.size(), "LiftedPoint dual");
  x.axpy(s, other.x);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] += s * other.u[k];
  return *this;
}

LiftedPoint operator+(LiftedPoint a, const LiftedPoint& b) { return a += b; }
LiftedPoint operator-(LiftedPoint a, const LiftedPoint& b) { return a -= b; }
LiftedPoint operator*(double s, LiftedPoint a) { return a *= s; }

double dot(const LiftedPoint& a, const LiftedPoint& b) {
  return dot(a.x, b.x) + dot(a.u, b.u);
}

double norm(const LiftedPoint& a) { return std::sqrt(dot(a, a)); }

Coords project_box(std::span<const double> v, std::span<const double> lo,
                   std::span<const double> hi) {
  require_same_length(v.size(), lo.size(), "project_box lo");
  require_same_length(v.size(), hi.size(), "project_box hi");
  Coords out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!(lo[k] <= hi[k])) {
      throw InvalidSet("project_box: lo > hi at component " +
                       std::to_string(k));
    }
    out[k] = std::max(lo[k], std::min(v[k], hi[k]));
  }
  return out;
}

Coords project_upper_bound(std::span<const double> y,
                           std::span<const double> c) {
  require_same_length(y.size(), c.size(), "project_upper_bound");
  Coords out(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) out[k] = std::min(y[k], c[k]);
  return out;
}

LiftedPoint project_ball(const LiftedPoint& xi, double r) {
  if (!(r > 0.0)) throw InvalidParameter("project_ball: radius must be > 0");
  const double n = norm(xi);
  if (n <= r) return xi;
  return (r / n) * xi;
}

}  // namespace hnep
