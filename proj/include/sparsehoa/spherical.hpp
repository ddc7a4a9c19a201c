// Copyright 2026 The sparsehoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "sparsehoa/planewave.hpp"

namespace sparsehoa {

inline constexpr int kMaxOrder = 7;

inline constexpr std::size_t acn(int degree, int order) {
  return static_cast<std::size_t>(degree * degree + degree + order);
}
inline constexpr std::size_t channels_for_order(int order) {
  return static_cast<std::size_t>((order + 1) * (order + 1));
}
inline constexpr int degree_of_acn(std::size_t index) {
  int l = 0;
  while (static_cast<std::size_t>((l + 1) * (l + 1)) <= index) ++l;
  return l;
}

// Real spherical harmonic gains in ACN order with SN3D normalization and no
// Condon-Shortley phase.
class ShVector {
 public:
  explicit ShVector(int order);

  int order() const { return order_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t acn_index) const { return values_[acn_index]; }
  double& operator[](std::size_t acn_index) { return values_[acn_index]; }
  const std::vector<double>& values() const { return values_; }

 private:
  int order_;
  std::vector<double> values_;
};

// Plane-wave encoding gains for a unit direction, order 1..7. The first-order
// block (ACN 1, 2, 3) is exactly (y, z, x). Throws ValidationError when
// |direction| differs from 1 by more than 1e-9 or the order is out of range.
ShVector sh_encode(const Vec3& direction, int order);

// 1 at ACN 0, zeros elsewhere.
ShVector sh_omni(int order);

// SN3D to N3D factor for degree l.
inline double n3d_factor(int degree) { return std::sqrt(2.0 * degree + 1.0); }

}  // namespace sparsehoa
