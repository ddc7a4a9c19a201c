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

#include <array>
#include <complex>
#include <optional>

namespace sparsehoa {

using Vec3 = std::array<double, 3>;

// Real MDCT bin of the four first-order channels (W scaled by 2^(-1/2)).
struct FoaRealBin {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct FoaComplexBin {
  std::complex<double> w, x, y, z;
};

// One directional plane wave plus an omnidirectional residual:
//   bin = amp_directional * [2^-1/2; direction] + amp_omni * [2^-1/2; 0; 0; 0]
// `direction` is empty when there is no directional energy.
struct PlaneWaveEstimate {
  std::optional<Vec3> direction;
  double amp_directional = 0.0;
  double amp_omni = 0.0;
};

// Single wave + omni split with the sign of W folded into the direction so
// the wave is always one-sided. sgn(0) is taken as +1. Throws
// ValidationError on non-finite input.
PlaneWaveEstimate extract_mdct(const FoaRealBin& bin);

// Forward model of extract_mdct.
FoaRealBin encode_estimate_foa(const PlaneWaveEstimate& est);

enum class HarpexStatus {
  Ok,
  // r^2 - pq < 0: no real pair of plane waves explains the bin.
  Uncertain,
  // Coinciding phases or directions, or a vanishing denominator.
  Degenerate,
};

// Two plane waves with complex amplitudes:
//   bin = amp_1 * [2^-1/2; direction_1] + amp_2 * [2^-1/2; direction_2]
struct HarpexEstimate {
  std::optional<Vec3> direction_1;
  std::optional<Vec3> direction_2;
  std::complex<double> amp_1;
  std::complex<double> amp_2;
  double r = 0.0;
  double p = 0.0;
  double q = 0.0;
  double c_1 = 0.0;
  double c_2 = 0.0;
  double s_1 = 0.0;
  double s_2 = 0.0;
  bool valid = true;
  HarpexStatus status = HarpexStatus::Ok;
  // Set whenever status != Ok: one-wave estimates of the real and the
  // imaginary part, which together reproduce the bin exactly.
  std::optional<PlaneWaveEstimate> fallback_real;
  std::optional<PlaneWaveEstimate> fallback_imag;
};

HarpexEstimate extract_harpex(const FoaComplexBin& bin);

// Re-synthesizes the bin from either the two waves or the fallback pair.
FoaComplexBin encode_harpex(const HarpexEstimate& est);

// Azimuth and elevation in degrees; azimuth counter-clockwise from +X toward +Y.
struct AzEl {
  double azimuth_deg = 0.0;
  double elevation_deg = 0.0;
};

AzEl to_azimuth_elevation(const Vec3& direction);
Vec3 from_azimuth_elevation(double azimuth_deg, double elevation_deg);

}  // namespace sparsehoa
