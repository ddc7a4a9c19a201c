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

#include <cstddef>
#include <vector>

#include "sparsehoa/signal.hpp"

namespace sparsehoa {

inline constexpr std::size_t kDefaultBlockLength = 32768;
inline constexpr std::size_t kDefaultCrossfade = 1024;

struct BlockSpan {
  std::size_t start = 0;
  std::size_t length = 0;
};

// Splits [0, total) into blocks of at most `block_length` samples where
// consecutive blocks overlap by `crossfade` samples.
std::vector<BlockSpan> plan_blocks(std::size_t total, std::size_t block_length = kDefaultBlockLength,
                                   std::size_t crossfade = kDefaultCrossfade);

// Copies block samples out of a signal.
MultichannelSignal extract_block(const MultichannelSignal& signal, const BlockSpan& block);

// Overlap-adds processed blocks with a raised-cosine crossfade over the
// overlapping samples; the fade-in and fade-out weights sum to one.
class BlockMixer {
 public:
  BlockMixer(std::vector<BlockSpan> blocks, std::size_t channels, std::size_t total,
             int sample_rate);

  // `processed` must have at least blocks[index].length samples per channel.
  void add(std::size_t index, const MultichannelSignal& processed);
  const MultichannelSignal& result() const { return out_; }
  MultichannelSignal take() { return std::move(out_); }

 private:
  double weight(std::size_t index, std::size_t offset) const;

  std::vector<BlockSpan> blocks_;
  MultichannelSignal out_;
};

}  // namespace sparsehoa
