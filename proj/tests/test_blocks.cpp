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

#include <atomic>
#include <stdexcept>
#include <vector>

#include "sparsehoa/blocks.hpp"
#include "sparsehoa/error.hpp"
#include "sparsehoa/parallel.hpp"

using namespace sparsehoa;

TEST_CASE("Block plans cover the signal with fixed overlaps") {
  REQUIRE(plan_blocks(0).empty());
  const auto one = plan_blocks(1000);
  REQUIRE(one.size() == 1);
  REQUIRE(one[0].length == 1000);

  for (std::size_t total : {32768u, 32769u, 70000u, 100000u}) {
    const auto blocks = plan_blocks(total, 32768, 1024);
    REQUIRE(blocks.front().start == 0);
    REQUIRE(blocks.back().start + blocks.back().length == total);
    for (std::size_t b = 1; b < blocks.size(); ++b) {
      REQUIRE(blocks[b].start == blocks[b - 1].start + blocks[b - 1].length - 1024);
      REQUIRE(blocks[b].length > 1024);
    }
  }
  REQUIRE_THROWS_AS(plan_blocks(100, 64, 64), ValidationError);
}

TEST_CASE("Crossfade weights sum to one") {
  const std::size_t total = 5000;
  const auto blocks = plan_blocks(total, 2048, 256);
  REQUIRE(blocks.size() == 3);
  BlockMixer mixer(blocks, 2, total, 48000);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    MultichannelSignal ones(2, blocks[b].length, 48000);
    for (std::size_t c = 0; c < 2; ++c)
      for (double& v : ones.channel(c)) v = 1.0;
    mixer.add(b, ones);
  }
  const auto out = mixer.take();
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t n = 0; n < total; ++n) REQUIRE(out.channel(c)[n] == Catch::Approx(1.0));
}

TEST_CASE("Block extraction copies the span") {
  std::vector<std::vector<double>> ch{{0, 1, 2, 3, 4, 5}};
  const auto b = extract_block(MultichannelSignal(ch, 8000), {2, 3});
  REQUIRE(b.length() == 3);
  REQUIRE(b.channel(0)[0] == 2.0);
  REQUIRE(b.channel(0)[2] == 4.0);
}

TEST_CASE("parallel_for visits every index and propagates errors") {
  for (unsigned threads : {1u, 3u}) {
    set_thread_count(threads);
    REQUIRE(thread_count() == threads);
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) REQUIRE(h == 1);
    REQUIRE_THROWS_AS(parallel_for(10,
                                   [](std::size_t i) {
                                     if (i == 7) throw std::runtime_error("boom");
                                   }),
                      std::runtime_error);
  }
  set_thread_count(1);
}
