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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sparsehoa {

// Complex spectra of sine-windowed frames of length N with hop N/2. Frame f
// starts at sample f*N/2 - N/2 (same framing as the MDCT layers); samples
// outside the signal are zero. Bins 0..N/2 of an unnormalized forward DFT.
struct StftFrames {
  std::size_t frame_length = 0;
  std::size_t frames = 0;
  std::size_t bins = 0;
  std::vector<std::complex<double>> values;  // frames x bins

  std::complex<double> at(std::size_t frame, std::size_t bin) const {
    return values[frame * bins + bin];
  }
};

// Throws ValidationError unless frame_length is an even number >= 4.
StftFrames stft_analyze(std::span<const double> signal, std::size_t frame_length);

}  // namespace sparsehoa
