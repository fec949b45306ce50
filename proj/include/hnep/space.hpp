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

#ifndef HNEP_SPACE_HPP_
#define HNEP_SPACE_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace hnep {

using Coords = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

// A strategy profile x = (x_1, ..., x_m). Blocks are stored contiguously so
// that inner products and norms coincide with the flat Euclidean ones. The
// block layout is fixed at construction; every binary operation checks it.
class BlockVector {
 public:
  BlockVector() = default;
  explicit BlockVector(std::vector<std::size_t> dims);
  BlockVector(std::vector<std::size_t> dims, Coords flat);

  std::size_t num_blocks() const { return dims_.size(); }
  std::size_t block_dim(std::size_t i) const { return dims_.at(i); }
  std::size_t size() const { return data_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }

  std::span<double> block(std::size_t i);
  std::span<const double> block(std::size_t i) const;
  // Overwrites block i; the length must match block_dim(i).
  void set_block(std::size_t i, std::span<const double> values);

  std::span<double> flat() { return data_; }
  std::span<const double> flat() const { return data_; }

  bool same_layout(const BlockVector& other) const {
    return dims_ == other.dims_;
  }

  BlockVector& operator+=(const BlockVector& other);
  BlockVector& operator-=(const BlockVector& other);
  BlockVector& operator*=(double s);
  // this += s * other
  BlockVector& axpy(double s, const BlockVector& other);

  friend bool operator==(const BlockVector&, const BlockVector&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  Coords data_;
};

BlockVector operator+(BlockVector a, const BlockVector& b);
BlockVector operator-(BlockVector a, const BlockVector& b);
BlockVector operator*(double s, BlockVector a);

double dot(const BlockVector& a, const BlockVector& b);
double norm(const BlockVector& a);

// Primal-dual point (x, u) of the product space H x G.
struct LiftedPoint {
  BlockVector x;
  Coords u;

  LiftedPoint& operator+=(const LiftedPoint& other);
  LiftedPoint& operator-=(const LiftedPoint& other);
  LiftedPoint& operator*=(double s);
  LiftedPoint& axpy(double s, const LiftedPoint& other);

  friend bool operator==(const LiftedPoint&, const LiftedPoint&) = default;
};

LiftedPoint operator+(LiftedPoint a, const LiftedPoint& b);
LiftedPoint operator-(LiftedPoint a, const LiftedPoint& b);
LiftedPoint operator*(double s, LiftedPoint a);

double dot(const LiftedPoint& a, const LiftedPoint& b);
double norm(const LiftedPoint& a);

// Componentwise clamp onto [lo, hi]. Throws ContractViolation on a length
// mismatch and InvalidSet if lo > hi anywhere.
Coords project_box(std::span<const double> v, std::span<const double> lo,
                   std::span<const double> hi);

// Projection onto {y | y <= c}.
Coords project_upper_bound(std::span<const double> y,
                           std::span<const double> c);

// Projection onto the closed ball of radius r centered at the origin of
// H x G. r may be +infinity, in which case this is the identity.
LiftedPoint project_ball(const LiftedPoint& xi, double r);

}  // namespace hnep

#endif  // HNEP_SPACE_HPP_
