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

#include "sparsehoa/planewave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sparsehoa/error.hpp"

namespace sparsehoa {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr double kDegenerateAngle = 1e-6;

double norm3(double x, double y, double z) { return std::sqrt(x * x + y * y + z * z); }

bool finite(std::complex<double> v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

double angle_between(const Vec3& a, const Vec3& b) {
  // atan2 form stays accurate for nearly parallel vectors.
  const double cx = a[1] * b[2] - a[2] * b[1];
  const double cy = a[2] * b[0] - a[0] * b[2];
  const double cz = a[0] * b[1] - a[1] * b[0];
  const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  return std::atan2(norm3(cx, cy, cz), dot);
}

void apply_fallback(HarpexEstimate& est, const FoaComplexBin& bin, HarpexStatus status) {
  est.status = status;
  est.valid = false;
  est.direction_1.reset();
  est.direction_2.reset();
  est.amp_1 = est.amp_2 = 0.0;
  est.fallback_real = extract_mdct({bin.w.real(), bin.x.real(), bin.y.real(), bin.z.real()});
  est.fallback_imag = extract_mdct({bin.w.imag(), bin.x.imag(), bin.y.imag(), bin.z.imag()});
}

}  // namespace

PlaneWaveEstimate extract_mdct(const FoaRealBin& bin) {
  if (!std::isfinite(bin.w) || !std::isfinite(bin.x) || !std::isfinite(bin.y) ||
      !std::isfinite(bin.z))
    throw ValidationError("extract_mdct: non-finite bin");
  PlaneWaveEstimate est;
  const double sign = bin.w >= 0.0 ? 1.0 : -1.0;
  const double a1 = norm3(bin.x, bin.y, bin.z);
  if (a1 > 0.0) {
    est.direction = Vec3{sign * bin.x / a1, sign * bin.y / a1, sign * bin.z / a1};
    est.amp_directional = sign * a1;
  }
  est.amp_omni = std::numbers::sqrt2 * bin.w - est.amp_directional;
  return est;
}

FoaRealBin encode_estimate_foa(const PlaneWaveEstimate& est) {
  FoaRealBin bin;
  bin.w = kInvSqrt2 * (est.amp_directional + est.amp_omni);
  if (est.direction) {
    bin.x = est.amp_directional * (*est.direction)[0];
    bin.y = est.amp_directional * (*est.direction)[1];
    bin.z = est.amp_directional * (*est.direction)[2];
  }
  return bin;
}

HarpexEstimate extract_harpex(const FoaComplexBin& bin) {
  if (!finite(bin.w) || !finite(bin.x) || !finite(bin.y) || !finite(bin.z))
    throw ValidationError("extract_harpex: non-finite bin");
  HarpexEstimate est;
  const double wr = bin.w.real(), wi = bin.w.imag();
  const double xr = bin.x.real(), xi = bin.x.imag();
  const double yr = bin.y.real(), yi = bin.y.imag();
  const double zr = bin.z.real(), zi = bin.z.imag();

  est.r = -2.0 * wr * wi + xr * xi + yr * yi + zr * zi;
  est.p = -2.0 * wr * wr + xr * xr + yr * yr + zr * zr;
  est.q = -2.0 * wi * wi + xi * xi + yi * yi + zi * zi;

  const double scale2 = std::norm(bin.w) + std::norm(bin.x) + std::norm(bin.y) + std::norm(bin.z);
  if (scale2 == 0.0) return est;

  // Rounding-level negatives (single-wave bins have r = p = q = 0) count as 0.
  double disc = est.r * est.r - est.p * est.q;
  if (disc < 0.0 && disc >= -1e-13 * scale2 * scale2) disc = 0.0;
  if (disc < 0.0) {
    apply_fallback(est, bin, HarpexStatus::Uncertain);
    return est;
  }
  const double pq_diff = est.p - est.q;
  const double denom = pq_diff * pq_diff + 4.0 * est.r * est.r;
  if (denom <= 1e-24 * scale2 * scale2) {
    apply_fallback(est, bin, HarpexStatus::Degenerate);
    return est;
  }

  // Phases of the two amplitudes. Their sum follows from the complex
  // quadratic form of the bin, their difference from r^2 - pq; cos^2 of each
  // equals the two branches of c^2, in the same order.
  const double sum = std::atan2(2.0 * est.r, pq_diff);
  const double diff = std::atan2(2.0 * std::sqrt(disc), est.p + est.q);
  const double phi_1 = 0.5 * (sum - diff);
  const double phi_2 = 0.5 * (sum + diff);
  const double sign_1 = std::cos(phi_1) < 0.0 ? -1.0 : 1.0;
  const double sign_2 = std::cos(phi_2) < 0.0 ? -1.0 : 1.0;
  est.c_1 = sign_1 * std::cos(phi_1);
  est.s_1 = sign_1 * std::sin(phi_1);
  est.c_2 = sign_2 * std::cos(phi_2);
  est.s_2 = sign_2 * std::sin(phi_2);

  const double det = est.c_1 * est.s_2 - est.c_2 * est.s_1;
  if (std::abs(det) < 1e-10) {
    apply_fallback(est, bin, HarpexStatus::Degenerate);
    return est;
  }

  // Per row j: [c1 c2; s1 s2] [m1 u1_j; m2 u2_j] = [Re B_j; Im B_j].
  const std::complex<double> rows[4] = {bin.w, bin.x, bin.y, bin.z};
  double v1[4], v2[4];
  for (int j = 0; j < 4; ++j) {
    const double re = rows[j].real(), im = rows[j].imag();
    v1[j] = (re * est.s_2 - est.c_2 * im) / det;
    v2[j] = (est.c_1 * im - est.s_1 * re) / det;
  }
  const double m1 = std::numbers::sqrt2 * v1[0];
  const double m2 = std::numbers::sqrt2 * v2[0];
  const double tiny = 1e-12 * std::sqrt(scale2);
  if (std::abs(m1) <= tiny || std::abs(m2) <= tiny) {
    apply_fallback(est, bin, HarpexStatus::Degenerate);
    return est;
  }
  Vec3 d1{v1[1] / m1, v1[2] / m1, v1[3] / m1};
  Vec3 d2{v2[1] / m2, v2[2] / m2, v2[3] / m2};
  const double n1 = norm3(d1[0], d1[1], d1[2]);
  const double n2 = norm3(d2[0], d2[1], d2[2]);
  for (auto& v : d1) v /= n1;
  for (auto& v : d2) v /= n2;
  const double sep = angle_between(d1, d2);
  if (sep < kDegenerateAngle || std::numbers::pi - sep < kDegenerateAngle) {
    apply_fallback(est, bin, HarpexStatus::Degenerate);
    return est;
  }

  // Amplitudes from the W row and the spatial row that best separates the
  // two directions.
  int best = 0;
  for (int j = 1; j < 3; ++j)
    if (std::abs(d2[j] - d1[j]) > std::abs(d2[best] - d1[best])) best = j;
  const double row_det = kInvSqrt2 * (d2[best] - d1[best]);
  const std::complex<double> bw = bin.w;
  const std::complex<double> bj = rows[best + 1];
  est.amp_1 = (bw * d2[best] - kInvSqrt2 * bj) / row_det;
  est.amp_2 = (kInvSqrt2 * bj - bw * d1[best]) / row_det;
  est.direction_1 = d1;
  est.direction_2 = d2;
  return est;
}

FoaComplexBin encode_harpex(const HarpexEstimate& est) {
  FoaComplexBin bin{};
  if (est.fallback_real && est.fallback_imag) {
    const FoaRealBin re = encode_estimate_foa(*est.fallback_real);
    const FoaRealBin im = encode_estimate_foa(*est.fallback_imag);
    bin.w = {re.w, im.w};
    bin.x = {re.x, im.x};
    bin.y = {re.y, im.y};
    bin.z = {re.z, im.z};
    return bin;
  }
  auto add_wave = [&](const std::optional<Vec3>& d, std::complex<double> a) {
    if (!d) return;
    bin.w += kInvSqrt2 * a;
    bin.x += a * (*d)[0];
    bin.y += a * (*d)[1];
    bin.z += a * (*d)[2];
  };
  add_wave(est.direction_1, est.amp_1);
  add_wave(est.direction_2, est.amp_2);
  return bin;
}

AzEl to_azimuth_elevation(const Vec3& d) {
  constexpr double kDeg = 180.0 / std::numbers::pi;
  return {std::atan2(d[1], d[0]) * kDeg, std::atan2(d[2], std::hypot(d[0], d[1])) * kDeg};
}

Vec3 from_azimuth_elevation(double azimuth_deg, double elevation_deg) {
  constexpr double kRad = std::numbers::pi / 180.0;
  const double az = azimuth_deg * kRad, el = elevation_deg * kRad;
  return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
}

}  // namespace sparsehoa
