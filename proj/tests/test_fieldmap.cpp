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
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>

#include "oracles.hpp"
#include "sparsehoa/error.hpp"
#include "sparsehoa/fieldmap.hpp"
#include "sparsehoa/planewave.hpp"
#include "sparsehoa/spherical.hpp"

using namespace sparsehoa;
namespace fs = std::filesystem;

namespace {

MultichannelSignal encode_scene(const Vec3& d, int order, std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto s = oracle::random_vector(rng, length);
  const auto y = sh_encode(d, order);
  std::vector<std::vector<double>> ch(y.size(), std::vector<double>(length));
  for (std::size_t c = 0; c < y.size(); ++c)
    for (std::size_t n = 0; n < length; ++n) ch[c][n] = y[c] * s[n];
  return MultichannelSignal(ch, 48000);
}

// Width in degrees of the contiguous equator arc around the peak holding at
// least half the peak power.
double equator_beamwidth(const EnergyMap& m, std::size_t el) {
  const auto [peak_az, peak_el] = m.argmax();
  const double half = 0.5 * m.max();
  std::size_t count = 1;
  for (std::size_t k = 1; k < m.grid.n_az / 2; ++k) {
    if (m.at((peak_az + k) % m.grid.n_az, el) < half) break;
    ++count;
  }
  for (std::size_t k = 1; k < m.grid.n_az / 2; ++k) {
    if (m.at((peak_az + m.grid.n_az - k) % m.grid.n_az, el) < half) break;
    ++count;
  }
  return count * 360.0 / m.grid.n_az;
}

}  // namespace

TEST_CASE("Grid coordinates") {
  MapGrid g;
  REQUIRE(g.n_az == 72);
  REQUIRE(g.n_el == 37);
  REQUIRE(g.azimuth(0) == -180.0);
  REQUIRE(g.azimuth(36) == 0.0);
  REQUIRE(g.elevation(0) == -90.0);
  REQUIRE(g.elevation(18) == 0.0);
  REQUIRE(g.elevation(36) == 90.0);
}

TEST_CASE("Zero signal gives a zero map") {
  const auto m = energy_map(MultichannelSignal(16, 100, 48000), MapGrid{});
  for (double v : m.values) REQUIRE(v == 0.0);
}

TEST_CASE("Omni signal gives an isotropic map") {
  std::mt19937_64 rng(89);
  std::vector<std::vector<double>> ch(64, std::vector<double>(500, 0.0));
  ch[0] = oracle::random_vector(rng, 500);
  const auto m = energy_map(MultichannelSignal(ch, 48000), MapGrid{});
  double lo = m.values[0], hi = m.values[0];
  for (double v : m.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  REQUIRE(lo > 0.0);
  REQUIRE(hi / lo <= 1.0 + 1e-9);
}

TEST_CASE("Plane-wave map peaks at the source with unit gain") {
  const auto hoa = encode_scene({1, 0, 0}, 7, 400, 97);
  const auto m = energy_map(hoa, MapGrid{});
  const auto [az, el] = m.argmax();
  REQUIRE(az == 36);
  REQUIRE(el == 18);
  // The beam has unit gain in the look direction: peak = mean square of s.
  double ms = 0.0;
  for (std::size_t n = 0; n < hoa.length(); ++n) ms += hoa.channel(0)[n] * hoa.channel(0)[n];
  ms /= static_cast<double>(hoa.length());
  REQUIRE(m.max() == Catch::Approx(ms).epsilon(1e-12));
  for (double v : m.values) REQUIRE((v >= 0.0 && std::isfinite(v)));
}

TEST_CASE("Higher order narrows the beam and raises peak-to-mean") {
  const MapGrid fine{720, 181};
  const auto m1 = energy_map(encode_scene({1, 0, 0}, 1, 200, 101), fine);
  const auto m7 = energy_map(encode_scene({1, 0, 0}, 7, 200, 101), fine);
  const double w1 = equator_beamwidth(m1, 90);
  const double w7 = equator_beamwidth(m7, 90);
  REQUIRE(w1 >= 3.0 * w7);
  REQUIRE(m7.peak_to_mean() > m1.peak_to_mean());
}

TEST_CASE("Rotating a first-order scene about Z shifts the argmax azimuth (property)") {
  for (double phi : {-170.0, -65.0, 25.0, 50.0, 135.0}) {
    const auto hoa = encode_scene(from_azimuth_elevation(phi, 0.0), 1, 200, 103);
    const auto m = energy_map(hoa, MapGrid{});
    const auto [az, el] = m.argmax();
    double delta = std::abs(m.grid.azimuth(az) - phi);
    delta = std::min(delta, 360.0 - delta);
    REQUIRE(delta <= 5.0);
    REQUIRE(el == 18);
  }
}

TEST_CASE("Window selection") {
  std::vector<std::vector<double>> ch(4, std::vector<double>(100, 0.0));
  for (std::size_t n = 50; n < 100; ++n) ch[0][n] = 1.0;
  const MultichannelSignal hoa(ch, 48000);
  REQUIRE(energy_map(hoa, MapGrid{8, 5}, 0, 50).max() == 0.0);
  const auto tail = energy_map(hoa, MapGrid{8, 5}, 50);
  REQUIRE(tail.window_length == 50);
  REQUIRE(tail.max() > 0.0);
  REQUIRE_THROWS_AS(energy_map(hoa, MapGrid{8, 5}, 90, 20), DimensionError);
  REQUIRE_THROWS_AS(energy_map(MultichannelSignal(5, 10, 48000), MapGrid{}), DimensionError);
}

TEST_CASE("Map CSV layout and round trip") {
  EnergyMap m;
  m.grid = {4, 2};
  m.values = {0.1, 0.2, 0.3, 0.4, 1.0 / 3.0, 2e-7, 5.0, 0.0};
  const auto path = fs::temp_directory_path() / "sparsehoa_map.csv";
  write_map(m, path, MapFormat::Csv);
  std::ifstream in(path);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    REQUIRE(std::count(line.begin(), line.end(), ',') == 4);
    ++rows;
  }
  REQUIRE(rows == 3);
  const auto back = read_map_csv(path);
  REQUIRE(back.grid.n_az == 4);
  REQUIRE(back.grid.n_el == 2);
  for (std::size_t i = 0; i < m.values.size(); ++i)
    REQUIRE(std::abs(back.values[i] - m.values[i]) <= 1e-6);
  fs::remove(path);
}

TEST_CASE("Map PGM output") {
  EnergyMap m;
  m.grid = {4, 3};
  m.values.assign(12, 0.0);
  const auto path = fs::temp_directory_path() / "sparsehoa_map.pgm";
  write_map(m, path, MapFormat::Pgm);
  std::ifstream in(path, std::ios::binary);
  std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const std::string header = "P5\n4 3\n255\n";
  REQUIRE(bytes.substr(0, header.size()) == header);
  REQUIRE(bytes.size() == header.size() + 12);
  for (std::size_t i = header.size(); i < bytes.size(); ++i) REQUIRE(bytes[i] == '\0');

  // Brightest pixel of a peaked map sits on the top row for the top elevation.
  m.values[2 * 4 + 1] = 2.0;
  m.values[0] = 1.0;
  write_map(m, path, MapFormat::Pgm);
  std::ifstream in2(path, std::ios::binary);
  bytes.assign(std::istreambuf_iterator<char>(in2), std::istreambuf_iterator<char>());
  REQUIRE(static_cast<unsigned char>(bytes[header.size() + 1]) == 255);
  REQUIRE(static_cast<unsigned char>(bytes[header.size() + 8]) == 128);
  fs::remove(path);
  REQUIRE(parse_map_format("pgm") == MapFormat::Pgm);
  REQUIRE_THROWS_AS(parse_map_format("png"), ValidationError);
}
