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
#include <memory>
#include <span>
#include <vector>

namespace sparsehoa {

// One MDCT layer: frame length N (power of two, >= 8), hop N/2, sine window.
class LayerSpec {
 public:
  explicit LayerSpec(std::size_t frame_length);

  std::size_t frame_length() const { return frame_length_; }
  std::size_t hop() const { return frame_length_ / 2; }
  std::size_t bins() const { return frame_length_ / 2; }
  // Frames covering a signal of `signal_length` samples padded by a hop on
  // both sides.
  std::size_t frames_for(std::size_t signal_length) const {
    return signal_length / hop() + 1;
  }
  const std::vector<double>& window() const { return window_; }

  friend bool operator==(const LayerSpec& a, const LayerSpec& b) {
    return a.frame_length_ == b.frame_length_;
  }

 private:
  std::size_t frame_length_;
  std::vector<double> window_;
};

// frames x bins coefficient grid of one channel in one layer, row-major.
struct LayerCoefficients {
  std::size_t frames = 0;
  std::size_t bins = 0;
  std::vector<double> values;

  LayerCoefficients() = default;
  LayerCoefficients(std::size_t frames, std::size_t bins)
      : frames(frames), bins(bins), values(frames * bins, 0.0) {}

  double& at(std::size_t frame, std::size_t bin) { return values[frame * bins + bin]; }
  double at(std::size_t frame, std::size_t bin) const { return values[frame * bins + bin]; }
};

// Orthonormal MDCT. Atom (f, k) is
//   w[n] * sqrt(4/N) * cos(2*pi/N * (n + 0.5 + N/4) * (k + 0.5))
// placed at offset f*N/2 - N/2 in the signal (so frame 0 starts in the
// leading pad). Throws DimensionError unless signal.size() % (N/2) == 0.
LayerCoefficients mdct_analyze(std::span<const double> signal, const LayerSpec& spec);

// Span-based form used by the solver's inner loop; `out` must hold
// frames_for(signal.size()) * bins() values.
void mdct_analyze_into(std::span<const double> signal, const LayerSpec& spec,
                       std::span<double> out);

// Overlap-add of windowed inverse frames, trimmed to the original length
// (frames - 1) * N/2.
std::vector<double> mdct_synthesize(const LayerCoefficients& coeffs, const LayerSpec& spec);

// Adds the synthesis of `coeffs` (frames x bins, row-major) into `out`;
// out.size() must equal (frames - 1) * N/2.
void mdct_synthesize_add(std::span<const double> coeffs, const LayerSpec& spec,
                         std::span<double> out);

}  // namespace sparsehoa
