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
#include <random>

#include "oracles.hpp"
#include "sparsehoa/error.hpp"
#include "sparsehoa/mdct.hpp"

using namespace sparsehoa;

namespace {

double energy(const std::vector<double>& v) {
  double e = 0.0;
  for (double x : v) e += x * x;
  return e;
}

double rel_rms(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(d / energy(b));
}

}  // namespace

TEST_CASE("Sine window satisfies Princen-Bradley") {
  for (std::size_t n : {8u, 32u, 2048u}) {
    LayerSpec spec(n);
    const auto& w = spec.window();
    for (std::size_t i = 0; i < n / 2; ++i)
      REQUIRE(w[i] * w[i] + w[i + n / 2] * w[i + n / 2] == Catch::Approx(1.0).margin(1e-15));
  }
}

TEST_CASE("LayerSpec rejects bad frame lengths") {
  REQUIRE_THROWS_AS(LayerSpec(4), ValidationError);
  REQUIRE_THROWS_AS(LayerSpec(96), ValidationError);
}

TEST_CASE("Analysis requires a multiple of the hop") {
  LayerSpec spec(32);
  std::vector<double> x(33, 0.0);
  REQUIRE_THROWS_AS(mdct_analyze(x, spec), DimensionError);
}

TEST_CASE("Zero signal and zero coefficients") {
  LayerSpec spec(64);
  std::vector<double> x(320, 0.0);
  const auto c = mdct_analyze(x, spec);
  REQUIRE(c.frames == 11);
  REQUIRE(c.bins == 32);
  for (double v : c.values) REQUIRE(v == 0.0);
  for (double v : mdct_synthesize(c, spec)) REQUIRE(v == 0.0);
}

TEST_CASE("Fast transform matches the direct definition") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {8u, 32u, 128u, 256u}) {
    const auto x = oracle::random_vector(rng, 4 * n);
    const auto fast = mdct_analyze(x, LayerSpec(n));
    const auto slow = oracle::naive_mdct(x, n);
    REQUIRE(fast.values.size() == slow.size());
    for (std::size_t i = 0; i < slow.size(); ++i)
      REQUIRE(fast.values[i] == Catch::Approx(slow[i]).margin(1e-9));
  }
}

TEST_CASE("A synthesis atom analyzes to a unit coefficient") {
  const std::size_t n = 64, length = 8 * 32;
  LayerSpec spec(n);
  const std::size_t frame = 4, bin = 9;
  const auto atom = oracle::mdct_atom(n, frame, bin, length);
  const auto c = mdct_analyze(atom, spec);
  REQUIRE(c.at(frame, bin) == Catch::Approx(1.0).margin(1e-12));
  for (std::size_t f = 0; f < c.frames; ++f) {
    for (std::size_t k = 0; k < c.bins; ++k) {
      if (f == frame && k == bin) continue;
      // Atoms of the same frame are orthogonal; leakage stays in neighbours.
      if (f == frame || f + 1 < frame || f > frame + 1) REQUIRE(std::abs(c.at(f, k)) < 1e-12);
    }
  }
}

TEST_CASE("Unit coefficient synthesizes a unit-energy atom") {
  for (std::size_t n : {32u, 2048u}) {
    LayerSpec spec(n);
    LayerCoefficients c(9, n / 2);
    c.at(3, 5) = 1.0;
    const auto y = mdct_synthesize(c, spec);
    REQUIRE(energy(y) == Catch::Approx(1.0).epsilon(1e-9));
    const auto atom = oracle::mdct_atom(n, 3, 5, y.size());
    for (std::size_t i = 0; i < y.size(); ++i) REQUIRE(y[i] == Catch::Approx(atom[i]).margin(1e-12));
  }
}

TEST_CASE("Perfect reconstruction and Parseval for every default layer") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {32u, 128u, 256u, 1024u, 2048u}) {
    LayerSpec spec(n);
    const auto x = oracle::random_vector(rng, 10 * n);
    const auto c = mdct_analyze(x, spec);
    REQUIRE(energy(c.values) == Catch::Approx(energy(x)).epsilon(1e-9));
    REQUIRE(rel_rms(mdct_synthesize(c, spec), x) <= 1e-9);
  }
}

TEST_CASE("Analysis is linear") {
  std::mt19937_64 rng(3);
  LayerSpec spec(128);
  const auto x = oracle::random_vector(rng, 640);
  const auto y = oracle::random_vector(rng, 640);
  std::vector<double> mix(640);
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = 2.5 * x[i] - 0.75 * y[i];
  const auto cx = mdct_analyze(x, spec), cy = mdct_analyze(y, spec), cm = mdct_analyze(mix, spec);
  for (std::size_t i = 0; i < cm.values.size(); ++i)
    REQUIRE(cm.values[i] == Catch::Approx(2.5 * cx.values[i] - 0.75 * cy.values[i]).margin(1e-9));
}

TEST_CASE("Synthesis checks the grid shape") {
  LayerSpec spec(32);
  LayerCoefficients wrong(4, 8);
  REQUIRE_THROWS_AS(mdct_synthesize(wrong, spec), DimensionError);
}
