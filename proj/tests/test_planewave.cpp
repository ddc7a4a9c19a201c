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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sparsehoa/error.hpp"
#include "sparsehoa/planewave.hpp"

using namespace sparsehoa;
using cd = std::complex<double>;

namespace {

const double kG = 1.0 / std::numbers::sqrt2;

double bin_diff(const FoaRealBin& a, const FoaRealBin& b) {
  return std::max({std::abs(a.w - b.w), std::abs(a.x - b.x), std::abs(a.y - b.y),
                   std::abs(a.z - b.z)});
}

double bin_norm(const FoaComplexBin& b) {
  return std::sqrt(std::norm(b.w) + std::norm(b.x) + std::norm(b.y) + std::norm(b.z));
}

double bin_residual(const FoaComplexBin& a, const FoaComplexBin& b) {
  FoaComplexBin d{a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  return bin_norm(d);
}

FoaComplexBin to_bin(const std::array<cd, 4>& v) { return {v[0], v[1], v[2], v[3]}; }

FoaRealBin random_real_bin(std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  return {dist(rng), dist(rng), dist(rng), dist(rng)};
}

}  // namespace

TEST_CASE("extract_mdct examples") {
  SECTION("zero bin") {
    const auto e = extract_mdct({0, 0, 0, 0});
    REQUIRE_FALSE(e.direction.has_value());
    REQUIRE(e.amp_directional == 0.0);
    REQUIRE(e.amp_omni == 0.0);
  }
  SECTION("positive W") {
    const auto e = extract_mdct({std::numbers::sqrt2, 1, 0, 0});
    REQUIRE(e.direction.has_value());
    REQUIRE((*e.direction)[0] == 1.0);
    REQUIRE(e.amp_directional == 1.0);
    REQUIRE(e.amp_omni == Catch::Approx(1.0).margin(1e-15));
  }
  SECTION("negative W folds the sign into the direction") {
    const auto e = extract_mdct({-std::numbers::sqrt2, -1, 0, 0});
    REQUIRE((*e.direction)[0] == 1.0);
    REQUIRE(e.amp_directional == -1.0);
    REQUIRE(e.amp_omni == Catch::Approx(-1.0).margin(1e-15));
    REQUIRE(bin_diff(encode_estimate_foa(e), {-std::numbers::sqrt2, -1, 0, 0}) <= 1e-15);
  }
  SECTION("W = 0 takes sign +1") {
    const auto e = extract_mdct({0, 0, -2, 0});
    REQUIRE((*e.direction)[1] == -1.0);
    REQUIRE(e.amp_directional == 2.0);
    REQUIRE(e.amp_omni == -2.0);
  }
  SECTION("omni only") {
    const auto e = extract_mdct({0.5, 0, 0, 0});
    REQUIRE_FALSE(e.direction.has_value());
    REQUIRE(e.amp_omni == Catch::Approx(0.5 * std::numbers::sqrt2));
  }
  SECTION("non-finite input") {
    REQUIRE_THROWS_AS(extract_mdct({std::numeric_limits<double>::quiet_NaN(), 0, 0, 0}),
                      ValidationError);
  }
}

TEST_CASE("encode_estimate_foa examples") {
  const auto omni = encode_estimate_foa({std::nullopt, 0.0, std::numbers::sqrt2});
  REQUIRE(bin_diff(omni, {1, 0, 0, 0}) <= 1e-15);
  const auto z = encode_estimate_foa({Vec3{0, 0, 1}, 1.0, 0.0});
  REQUIRE(bin_diff(z, {kG, 0, 0, 1}) <= 1e-15);
}

TEST_CASE("extract_mdct reconstruction identity (property)") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10000; ++i) {
    const auto bin = random_real_bin(rng);
    const auto e = extract_mdct(bin);
    REQUIRE(bin_diff(encode_estimate_foa(e), bin) <= 1e-12);
    const auto& d = *e.direction;
    REQUIRE(std::abs(std::hypot(d[0], d[1], d[2]) - 1.0) <= 1e-12);
  }
}

TEST_CASE("extract_mdct rotation and scale equivariance (property)") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int i = 0; i < 2000; ++i) {
    const auto bin = random_real_bin(rng);
    const auto e = extract_mdct(bin);
    const auto rot = oracle::random_rotation(rng);
    const auto v = oracle::rotate(rot, {bin.x, bin.y, bin.z});
    const auto er = extract_mdct({bin.w, v[0], v[1], v[2]});
    const auto expected = oracle::rotate(rot, *e.direction);
    for (int k = 0; k < 3; ++k) REQUIRE(std::abs((*er.direction)[k] - expected[k]) <= 1e-12);
    REQUIRE(std::abs(er.amp_directional - e.amp_directional) <= 1e-12);
    REQUIRE(std::abs(er.amp_omni - e.amp_omni) <= 1e-12);

    const double c = scale(rng);
    const auto es = extract_mdct({c * bin.w, c * bin.x, c * bin.y, c * bin.z});
    for (int k = 0; k < 3; ++k) REQUIRE(std::abs((*es.direction)[k] - (*e.direction)[k]) <= 1e-12);
    REQUIRE(std::abs(es.amp_directional - c * e.amp_directional) <= 1e-12 * c);
    REQUIRE(std::abs(es.amp_omni - c * e.amp_omni) <= 1e-12 * c);
  }
}

TEST_CASE("extract_mdct inverts encode_estimate_foa on sign-consistent estimates (property)") {
  std::mt19937_64 rng(47);
  std::normal_distribution<double> dist;
  int checked = 0;
  while (checked < 1000) {
    PlaneWaveEstimate e{oracle::random_unit(rng), dist(rng), dist(rng)};
    // W keeps the sign of the directional amplitude.
    if ((e.amp_directional + e.amp_omni >= 0.0) != (e.amp_directional >= 0.0)) continue;
    const auto back = extract_mdct(encode_estimate_foa(e));
    for (int k = 0; k < 3; ++k) REQUIRE(std::abs((*back.direction)[k] - (*e.direction)[k]) <= 1e-12);
    REQUIRE(std::abs(back.amp_directional - e.amp_directional) <= 1e-12);
    REQUIRE(std::abs(back.amp_omni - e.amp_omni) <= 1e-12);
    ++checked;
  }
}

TEST_CASE("Azimuth/elevation conversion") {
  const auto a = to_azimuth_elevation({0, 1, 0});
  REQUIRE(a.azimuth_deg == Catch::Approx(90.0));
  REQUIRE(a.elevation_deg == Catch::Approx(0.0).margin(1e-12));
  REQUIRE(to_azimuth_elevation({0, 0, 1}).elevation_deg == Catch::Approx(90.0));
  const auto v = from_azimuth_elevation(-135.0, 30.0);
  const auto b = to_azimuth_elevation(v);
  REQUIRE(b.azimuth_deg == Catch::Approx(-135.0));
  REQUIRE(b.elevation_deg == Catch::Approx(30.0));
}

TEST_CASE("HARPEX two real-direction waves with quadrature amplitudes") {
  const FoaComplexBin bin{kG * cd(1, 1), 1.0, cd(0, 1), 0.0};
  const auto e = extract_harpex(bin);
  REQUIRE(e.r == Catch::Approx(-1.0));
  REQUIRE(e.p == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(e.q == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(e.valid);
  REQUIRE(e.status == HarpexStatus::Ok);
  const Vec3 px{1, 0, 0}, py{0, 1, 0};
  const bool order_a = oracle::angle(*e.direction_1, px) < 1e-9;
  const auto& dx = order_a ? *e.direction_1 : *e.direction_2;
  const auto& dy = order_a ? *e.direction_2 : *e.direction_1;
  const cd ax = order_a ? e.amp_1 : e.amp_2;
  const cd ay = order_a ? e.amp_2 : e.amp_1;
  REQUIRE(oracle::angle(dx, px) < 1e-9);
  REQUIRE(oracle::angle(dy, py) < 1e-9);
  REQUIRE(std::abs(ax - cd(1, 0)) < 1e-9);
  REQUIRE(std::abs(ay - cd(0, 1)) < 1e-9);
  REQUIRE(bin_residual(encode_harpex(e), bin) <= 1e-9 * bin_norm(bin));
}

TEST_CASE("HARPEX uncertain bin falls back without losing energy") {
  const FoaComplexBin bin{0.0, 1.0, cd(0, 1), 0.0};
  const auto e = extract_harpex(bin);
  REQUIRE(e.p == 1.0);
  REQUIRE(e.q == 1.0);
  REQUIRE(e.r == 0.0);
  REQUIRE_FALSE(e.valid);
  REQUIRE(e.status == HarpexStatus::Uncertain);
  REQUIRE(e.fallback_real.has_value());
  REQUIRE(e.fallback_imag.has_value());
  const auto back = encode_harpex(e);
  REQUIRE(bin_residual(back, bin) <= 1e-9 * bin_norm(bin));
  REQUIRE(std::abs(bin_norm(back) * bin_norm(back) - 2.0) <= 1e-9);
}

TEST_CASE("HARPEX zero bin") {
  const auto e = extract_harpex({0.0, 0.0, 0.0, 0.0});
  REQUIRE(e.valid);
  REQUIRE_FALSE(e.direction_1.has_value());
  REQUIRE_FALSE(e.direction_2.has_value());
  REQUIRE(e.amp_1 == 0.0);
  REQUIRE(e.amp_2 == 0.0);
}

TEST_CASE("HARPEX single wave is degenerate and falls back exactly") {
  const auto v = oracle::two_wave_bin(cd(0.3, 0.8), {0, 0, 1}, 0.0, {1, 0, 0});
  const auto bin = to_bin(v);
  const auto e = extract_harpex(bin);
  REQUIRE_FALSE(e.valid);
  REQUIRE(e.status == HarpexStatus::Degenerate);
  REQUIRE(bin_residual(encode_harpex(e), bin) <= 1e-12);
}

TEST_CASE("HARPEX recovers random two-wave bins (property)") {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> dist;
  int valid = 0;
  for (int i = 0; i < 1000; ++i) {
    Vec3 d1, d2;
    do {
      d1 = oracle::random_unit(rng);
      d2 = oracle::random_unit(rng);
    } while (oracle::angle(d1, d2) <= 5.0 * std::numbers::pi / 180.0);
    cd a1, a2;
    do {
      a1 = {dist(rng), dist(rng)};
      a2 = {dist(rng), dist(rng)};
    } while (std::abs(std::abs(a1) - std::abs(a2)) < 1e-3);
    const auto bin = to_bin(oracle::two_wave_bin(a1, d1, a2, d2));
    const auto e = extract_harpex(bin);
    REQUIRE(e.r * e.r - e.p * e.q >= -1e-12 * bin_norm(bin) * bin_norm(bin) * bin_norm(bin) * bin_norm(bin));
    REQUIRE(bin_residual(encode_harpex(e), bin) <= 1e-9 * bin_norm(bin));
    if (!e.valid) continue;
    ++valid;
    const double straight =
        std::max(oracle::angle(*e.direction_1, d1), oracle::angle(*e.direction_2, d2));
    const double swapped =
        std::max(oracle::angle(*e.direction_1, d2), oracle::angle(*e.direction_2, d1));
    REQUIRE(std::min(straight, swapped) <= 1e-6);
  }
  REQUIRE(valid >= 990);
}

TEST_CASE("HARPEX phases agree with the closed-form c and s branches") {
  std::mt19937_64 rng(59);
  std::normal_distribution<double> dist;
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 500; ++i) {
    const auto bin = to_bin(oracle::two_wave_bin({dist(rng), dist(rng)}, oracle::random_unit(rng),
                                                 {dist(rng), dist(rng)}, oracle::random_unit(rng)));
    const auto e = extract_harpex(bin);
    if (!e.valid) continue;
    const double n2 = bin_norm(bin) * bin_norm(bin);
    const double disc = e.r * e.r - e.p * e.q;
    if (std::abs(e.r) < 0.1 * n2 || disc < 0.01 * n2 * n2) continue;
    const double den = (e.q - e.p) * (e.q - e.p) + 4.0 * e.r * e.r;
    double c[2], s[2];
    for (int b = 0; b < 2; ++b) {
      const double sign = b == 0 ? 1.0 : -1.0;
      c[b] = std::sqrt((2 * e.r * e.r - e.p * e.q + e.p * e.p + sign * 2 * e.r * std::sqrt(disc)) /
                       den);
      s[b] = ((e.q - e.p) * c[b] + e.p / c[b]) / (2.0 * e.r);
    }
    if (std::min(c[0], c[1]) < 0.1) continue;
    REQUIRE(std::abs(e.c_1 - c[0]) <= 1e-9);
    REQUIRE(std::abs(e.s_1 - s[0]) <= 1e-9);
    REQUIRE(std::abs(e.c_2 - c[1]) <= 1e-9);
    REQUIRE(std::abs(e.s_2 - s[1]) <= 1e-9);
    ++checked;
  }
  REQUIRE(checked >= 100);
}

TEST_CASE("HARPEX rejects non-finite input") {
  REQUIRE_THROWS_AS(extract_harpex({cd(0, std::numeric_limits<double>::infinity()), 0, 0, 0}),
                    ValidationError);
}
