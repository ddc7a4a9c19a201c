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

#include "sparsehoa/signal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sparsehoa/error.hpp"

namespace sparsehoa {

MultichannelSignal::MultichannelSignal(std::size_t channels, std::size_t length, int sample_rate)
    : channels_(channels, std::vector<double>(length, 0.0)), sample_rate_(sample_rate) {
  if (channels == 0) throw DimensionError("signal needs at least one channel");
  if (sample_rate <= 0) throw ValidationError("sample rate must be positive");
}

MultichannelSignal::MultichannelSignal(std::vector<std::vector<double>> channels, int sample_rate)
    : channels_(std::move(channels)), sample_rate_(sample_rate) {
  if (channels_.empty()) throw DimensionError("signal needs at least one channel");
  if (sample_rate <= 0) throw ValidationError("sample rate must be positive");
  for (std::size_t c = 1; c < channels_.size(); ++c) {
    if (channels_[c].size() != channels_[0].size()) {
      throw DimensionError("channel " + std::to_string(c) + " has " +
                           std::to_string(channels_[c].size()) + " samples, expected " +
                           std::to_string(channels_[0].size()));
    }
  }
}

double MultichannelSignal::energy() const {
  double e = 0.0;
  for (const auto& ch : channels_)
    for (double v : ch) e += v * v;
  return e;
}

bool MultichannelSignal::all_finite() const {
  for (const auto& ch : channels_)
    for (double v : ch)
      if (!std::isfinite(v)) return false;
  return true;
}

namespace {

void check_same_shape(const MultichannelSignal& a, const MultichannelSignal& b) {
  if (a.channel_count() != b.channel_count() || a.length() != b.length())
    throw DimensionError("signals differ in shape");
}

double difference_energy(const MultichannelSignal& a, const MultichannelSignal& b) {
  check_same_shape(a, b);
  double e = 0.0;
  for (std::size_t c = 0; c < a.channel_count(); ++c) {
    auto x = a.channel(c);
    auto y = b.channel(c);
    for (std::size_t n = 0; n < x.size(); ++n) e += (x[n] - y[n]) * (x[n] - y[n]);
  }
  return e;
}

}  // namespace

double rms_difference(const MultichannelSignal& a, const MultichannelSignal& b) {
  const double count = static_cast<double>(a.channel_count() * a.length());
  if (count == 0) return 0.0;
  return std::sqrt(difference_energy(a, b) / count);
}

double relative_rms_error(const MultichannelSignal& a, const MultichannelSignal& b) {
  const double diff = difference_energy(a, b);
  const double ref = b.energy();
  if (ref == 0.0) return rms_difference(a, b);
  return std::sqrt(diff / ref);
}

double snr_db(const MultichannelSignal& reference, const MultichannelSignal& estimate) {
  const double err = difference_energy(reference, estimate);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(reference.energy() / err);
}

}  // namespace sparsehoa
