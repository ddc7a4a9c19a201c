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

#include "sparsehoa/mdct.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "fftw_lock.hpp"
#include "sparsehoa/error.hpp"

namespace sparsehoa {

namespace detail {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace detail

namespace {

// FFTW's REDFT11 is an unnormalized DCT-IV: Y_k = 2 sum_j X_j cos(pi/M (j+1/2)(k+1/2)).
// Plans are created once per size with FFTW_ESTIMATE so results do not depend
// on timing measurements.
class Dct4 {
 public:
  static const Dct4& get(std::size_t m) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<Dct4>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[m];
    if (!slot) slot.reset(new Dct4(m));
    return *slot;
  }

  // `in` and `out` must come from fftw_alloc_real.
  void run(double* in, double* out) const { fftw_execute_r2r(plan_, in, out); }

  Dct4(const Dct4&) = delete;
  Dct4& operator=(const Dct4&) = delete;

 private:
  explicit Dct4(std::size_t m) {
    std::lock_guard planner(detail::fftw_planner_mutex());
    double* in = fftw_alloc_real(m);
    double* out = fftw_alloc_real(m);
    plan_ = fftw_plan_r2r_1d(static_cast<int>(m), in, out, FFTW_REDFT11, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
  }

  fftw_plan plan_;
};

struct Scratch {
  double* a = nullptr;
  double* b = nullptr;
  std::size_t capacity = 0;

  void reserve(std::size_t m) {
    if (m <= capacity) return;
    fftw_free(a);
    fftw_free(b);
    a = fftw_alloc_real(m);
    b = fftw_alloc_real(m);
    capacity = m;
  }
  ~Scratch() {
    fftw_free(a);
    fftw_free(b);
  }
};

Scratch& scratch(std::size_t m) {
  thread_local Scratch s;
  s.reserve(m);
  return s;
}

void check_length(std::size_t length, const LayerSpec& spec) {
  if (length % spec.hop() != 0)
    throw DimensionError("signal length " + std::to_string(length) +
                         " is not a multiple of the hop " + std::to_string(spec.hop()));
}

}  // namespace

LayerSpec::LayerSpec(std::size_t frame_length) : frame_length_(frame_length) {
  if (frame_length < 8 || !std::has_single_bit(frame_length))
    throw ValidationError("MDCT frame length must be a power of two >= 8, got " +
                          std::to_string(frame_length));
  window_.resize(frame_length);
  for (std::size_t n = 0; n < frame_length; ++n)
    window_[n] = std::sin(std::numbers::pi * (static_cast<double>(n) + 0.5) /
                          static_cast<double>(frame_length));
}

void mdct_analyze_into(std::span<const double> signal, const LayerSpec& spec,
                       std::span<double> out) {
  check_length(signal.size(), spec);
  const std::size_t m = spec.hop();
  const std::size_t n_len = spec.frame_length();
  const std::size_t frames = spec.frames_for(signal.size());
  if (out.size() != frames * m) throw DimensionError("MDCT output buffer has the wrong size");
  const auto& w = spec.window();
  const double scale = 0.5 * std::sqrt(2.0 / static_cast<double>(m));
  const std::size_t half = m / 2;
  const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(signal.size());
  const Dct4& dct = Dct4::get(m);
  Scratch& s = scratch(m);
  std::vector<double> z(n_len);

  for (std::size_t f = 0; f < frames; ++f) {
    const std::ptrdiff_t origin = static_cast<std::ptrdiff_t>(f * m) - static_cast<std::ptrdiff_t>(m);
    for (std::size_t n = 0; n < n_len; ++n) {
      const std::ptrdiff_t t = origin + static_cast<std::ptrdiff_t>(n);
      z[n] = (t >= 0 && t < len) ? w[n] * signal[static_cast<std::size_t>(t)] : 0.0;
    }
    // Fold the windowed frame onto the DCT-IV input.
    for (std::size_t j = 0; j < m; ++j) {
      double v = -z[3 * half - 1 - j];
      v += (j >= half) ? z[j - half] : -z[j + 3 * half];
      s.a[j] = v;
    }
    dct.run(s.a, s.b);
    double* dst = out.data() + f * m;
    for (std::size_t k = 0; k < m; ++k) dst[k] = scale * s.b[k];
  }
}

LayerCoefficients mdct_analyze(std::span<const double> signal, const LayerSpec& spec) {
  check_length(signal.size(), spec);
  LayerCoefficients coeffs(spec.frames_for(signal.size()), spec.bins());
  mdct_analyze_into(signal, spec, coeffs.values);
  return coeffs;
}

void mdct_synthesize_add(std::span<const double> coeffs, const LayerSpec& spec,
                         std::span<double> out) {
  const std::size_t m = spec.hop();
  if (coeffs.size() % m != 0 || coeffs.empty())
    throw DimensionError("coefficient grid is not a whole number of frames");
  const std::size_t frames = coeffs.size() / m;
  if (out.size() != (frames - 1) * m)
    throw DimensionError("synthesis buffer holds " + std::to_string(out.size()) +
                         " samples, grid needs " + std::to_string((frames - 1) * m));
  const auto& w = spec.window();
  const double scale = 0.5 * std::sqrt(2.0 / static_cast<double>(m));
  const std::size_t half = m / 2;
  const std::size_t n_len = spec.frame_length();
  const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(out.size());
  const Dct4& dct = Dct4::get(m);
  Scratch& s = scratch(m);

  for (std::size_t f = 0; f < frames; ++f) {
    const double* src = coeffs.data() + f * m;
    bool silent = true;
    for (std::size_t k = 0; k < m; ++k) {
      s.a[k] = src[k];
      silent = silent && src[k] == 0.0;
    }
    if (silent) continue;
    dct.run(s.a, s.b);
    const std::ptrdiff_t origin = static_cast<std::ptrdiff_t>(f * m) - static_cast<std::ptrdiff_t>(m);
    for (std::size_t n = 0; n < n_len; ++n) {
      const std::ptrdiff_t t = origin + static_cast<std::ptrdiff_t>(n);
      if (t < 0 || t >= len) continue;
      double y;
      if (n < half) {
        y = s.b[n + half];
      } else if (n < 3 * half) {
        y = -s.b[3 * half - 1 - n];
      } else {
        y = -s.b[n - 3 * half];
      }
      out[static_cast<std::size_t>(t)] += scale * w[n] * y;
    }
  }
}

std::vector<double> mdct_synthesize(const LayerCoefficients& coeffs, const LayerSpec& spec) {
  if (coeffs.bins != spec.bins() || coeffs.frames == 0 ||
      coeffs.values.size() != coeffs.frames * coeffs.bins)
    throw DimensionError("coefficient grid does not match the layer");
  std::vector<double> out((coeffs.frames - 1) * spec.hop(), 0.0);
  mdct_synthesize_add(coeffs.values, spec, out);
  return out;
}

}  // namespace sparsehoa
