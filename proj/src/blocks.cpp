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

#include "sparsehoa/blocks.hpp"

#include <cmath>
#include <numbers>

#include "sparsehoa/error.hpp"

namespace sparsehoa {

std::vector<BlockSpan> plan_blocks(std::size_t total, std::size_t block_length,
                                   std::size_t crossfade) {
  if (block_length == 0 || crossfade >= block_length)
    throw ValidationError("block length must exceed the crossfade length");
  std::vector<BlockSpan> blocks;
  if (total == 0) return blocks;
  const std::size_t advance = block_length - crossfade;
  for (std::size_t start = 0;; start += advance) {
    const std::size_t length = std::min(block_length, total - start);
    blocks.push_back({start, length});
    if (start + length >= total) break;
  }
  return blocks;
}

MultichannelSignal extract_block(const MultichannelSignal& signal, const BlockSpan& block) {
  if (block.start + block.length > signal.length()) throw DimensionError("block exceeds the signal");
  std::vector<std::vector<double>> channels(signal.channel_count());
  for (std::size_t c = 0; c < signal.channel_count(); ++c) {
    auto src = signal.channel(c).subspan(block.start, block.length);
    channels[c].assign(src.begin(), src.end());
  }
  return MultichannelSignal(std::move(channels), signal.sample_rate());
}

BlockMixer::BlockMixer(std::vector<BlockSpan> blocks, std::size_t channels, std::size_t total,
                       int sample_rate)
    : blocks_(std::move(blocks)), out_(channels, total, sample_rate) {}

double BlockMixer::weight(std::size_t index, std::size_t offset) const {
  const BlockSpan& b = blocks_[index];
  double w = 1.0;
  // Fade in over the overlap with the previous block.
  if (index > 0) {
    const BlockSpan& prev = blocks_[index - 1];
    const std::size_t overlap = prev.start + prev.length - b.start;
    if (offset < overlap) {
      const double s = std::sin(0.5 * std::numbers::pi * (static_cast<double>(offset) + 0.5) /
                                static_cast<double>(overlap));
      w *= s * s;
    }
  }
  // Fade out over the overlap with the next block.
  if (index + 1 < blocks_.size()) {
    const BlockSpan& next = blocks_[index + 1];
    const std::size_t overlap = b.start + b.length - next.start;
    if (offset >= b.length - overlap) {
      const std::size_t k = offset - (b.length - overlap);
      const double s = std::cos(0.5 * std::numbers::pi * (static_cast<double>(k) + 0.5) /
                                static_cast<double>(overlap));
      w *= s * s;
    }
  }
  return w;
}

void BlockMixer::add(std::size_t index, const MultichannelSignal& processed) {
  const BlockSpan& b = blocks_.at(index);
  if (processed.channel_count() != out_.channel_count() || processed.length() < b.length)
    throw DimensionError("processed block has the wrong shape");
  for (std::size_t c = 0; c < out_.channel_count(); ++c) {
    auto dst = out_.channel(c);
    auto src = processed.channel(c);
    for (std::size_t n = 0; n < b.length; ++n) dst[b.start + n] += weight(index, n) * src[n];
  }
}

}  // namespace sparsehoa
