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

#include "sparsehoa/stft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <string>

#include "fftw_lock.hpp"
#include "sparsehoa/error.hpp"

namespace sparsehoa {

namespace {

class RealFft {
 public:
  static const RealFft& get(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<RealFft>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot.reset(new RealFft(n));
    return *slot;
  }

  void run(double* in, fftw_complex* out) const { fftw_execute_dft_r2c(plan_, in, out); }

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

 private:
  explicit RealFft(std::size_t n) {
    std::lock_guard planner(detail::fftw_planner_mutex());
    double* in = fftw_alloc_real(n);
    fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
  }

  fftw_plan plan_;
};

}  // namespace

StftFrames stft_analyze(std::span<const double> signal, std::size_t frame_length) {
  if (frame_length < 4 || frame_length % 2 != 0)
    throw ValidationError("STFT frame length must be even and >= 4, got " +
                          std::to_string(frame_length));
  const std::size_t hop = frame_length / 2;
  StftFrames out;
  out.frame_length = frame_length;
  out.frames = (signal.size() + hop - 1) / hop + 1;
  out.bins = hop + 1;
  out.values.resize(out.frames * out.bins);

  std::vector<double> window(frame_length);
  for (std::size_t n = 0; n < frame_length; ++n)
    window[n] = std::sin(std::numbers::pi * (static_cast<double>(n) + 0.5) /
                         static_cast<double>(frame_length));

  const RealFft& fft = RealFft::get(frame_length);
  double* in = fftw_alloc_real(frame_length);
  fftw_complex* spec = fftw_alloc_complex(out.bins);
  const auto len = static_cast<std::ptrdiff_t>(signal.size());
  for (std::size_t f = 0; f < out.frames; ++f) {
    const std::ptrdiff_t origin =
        static_cast<std::ptrdiff_t>(f * hop) - static_cast<std::ptrdiff_t>(hop);
    for (std::size_t n = 0; n < frame_length; ++n) {
      const std::ptrdiff_t t = origin + static_cast<std::ptrdiff_t>(n);
      in[n] = (t >= 0 && t < len) ? window[n] * signal[static_cast<std::size_t>(t)] : 0.0;
    }
    fft.run(in, spec);
    for (std::size_t k = 0; k < out.bins; ++k)
      out.values[f * out.bins + k] = {spec[k][0], spec[k][1]};
  }
  fftw_free(in);
  fftw_free(spec);
  return out;
}

}  // namespace sparsehoa
