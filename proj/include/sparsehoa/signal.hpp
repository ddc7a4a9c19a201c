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
#include <span>
#include <vector>

namespace sparsehoa {

// Equal-length sample sequences plus a sample rate. Used for FOA input,
// HOA output and single-channel test material alike.
class MultichannelSignal {
 public:
  MultichannelSignal() = default;
  // Zero-filled signal.
  MultichannelSignal(std::size_t channels, std::size_t length, int sample_rate);
  // Throws DimensionError when the channels differ in length or there are none,
  // ValidationError when the sample rate is not positive.
  MultichannelSignal(std::vector<std::vector<double>> channels, int sample_rate);

  std::size_t channel_count() const { return channels_.size(); }
  std::size_t length() const { return channels_.empty() ? 0 : channels_[0].size(); }
  int sample_rate() const { return sample_rate_; }

  std::span<const double> channel(std::size_t c) const { return channels_.at(c); }
  std::span<double> channel(std::size_t c) { return channels_.at(c); }
  const std::vector<std::vector<double>>& channels() const { return channels_; }

  double energy() const;
  bool all_finite() const;

 private:
  std::vector<std::vector<double>> channels_;
  int sample_rate_ = 48000;
};

// Root-mean-square of (a - b) divided by the RMS of b. Returns the absolute RMS
// difference when b is silent.
double relative_rms_error(const MultichannelSignal& a, const MultichannelSignal& b);
double rms_difference(const MultichannelSignal& a, const MultichannelSignal& b);

// 10·log10(|reference|² / |reference - estimate|²); +inf for an exact match.
double snr_db(const MultichannelSignal& reference, const MultichannelSignal& estimate);

}  // namespace sparsehoa
