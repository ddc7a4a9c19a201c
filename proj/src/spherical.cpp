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

#include "sparsehoa/spherical.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "sparsehoa/error.hpp"

namespace sparsehoa {

namespace {

void check_order(int order) {
  if (order < 1 || order > kMaxOrder)
    throw ValidationError("ambisonic order must be in [1, 7], got " + std::to_string(order));
}

// SN3D normalization sqrt((2 - delta_m0) (l - m)! / (l + m)!).
double sn3d_norm(int l, int m) {
  double ratio = 1.0;
  for (int k = l - m + 1; k <= l + m; ++k) ratio /= k;
  return std::sqrt((m == 0 ? 1.0 : 2.0) * ratio);
}

}  // namespace

ShVector::ShVector(int order) : order_(order), values_(channels_for_order(order), 0.0) {
  check_order(order);
}

ShVector sh_encode(const Vec3& d, int order) {
  check_order(order);
  const double len = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  if (!(std::abs(len - 1.0) <= 1e-9))
    throw ValidationError("sh_encode needs a unit direction");
  ShVector out(order);
  const double z = d[2];

  // P_l^m(z) = (1 - z^2)^(m/2) Q_l^m(z); the (1 - z^2)^(m/2) cos/sin(m phi)
  // factor is Re/Im of (x + iy)^m, which avoids any trigonometry and keeps
  // the poles exact.
  std::complex<double> xy_pow = 1.0;
  const std::complex<double> xy(d[0], d[1]);
  double q_mm = 1.0;  // (2m - 1)!!
  for (int m = 0; m <= order; ++m) {
    if (m > 0) {
      xy_pow *= xy;
      q_mm *= 2.0 * m - 1.0;
    }
    double q_prev = 0.0;
    double q = q_mm;
    for (int l = m; l <= order; ++l) {
      if (l == m + 1) {
        q_prev = q;
        q = (2.0 * m + 1.0) * z * q_mm;
      } else if (l > m + 1) {
        const double next = ((2.0 * l - 1.0) * z * q - (l + m - 1.0) * q_prev) / (l - m);
        q_prev = q;
        q = next;
      }
      const double base = sn3d_norm(l, m) * q;
      if (m == 0) {
        out[acn(l, 0)] = base;
      } else {
        out[acn(l, m)] = base * xy_pow.real();
        out[acn(l, -m)] = base * xy_pow.imag();
      }
    }
  }
  return out;
}

ShVector sh_omni(int order) {
  ShVector out(order);
  out[0] = 1.0;
  return out;
}

}  // namespace sparsehoa
