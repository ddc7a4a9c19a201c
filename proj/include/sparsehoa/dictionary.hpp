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
#include <filesystem>
#include <vector>

#include "sparsehoa/mdct.hpp"
#include "sparsehoa/signal.hpp"

namespace sparsehoa {

inline const std::vector<std::size_t> kDefaultLayerLengths = {32, 128, 256, 1024, 2048};

// Union of MDCT layers with strictly increasing power-of-two frame lengths,
// all sized for one signal length (a multiple of the longest hop).
class Dictionary {
 public:
  Dictionary(std::vector<std::size_t> frame_lengths, std::size_t signal_length);

  const std::vector<LayerSpec>& layers() const { return layers_; }
  std::size_t layer_count() const { return layers_.size(); }
  std::size_t signal_length() const { return signal_length_; }
  std::size_t max_hop() const { return layers_.back().hop(); }

  // Smallest length >= n accepted by a dictionary with these frame lengths.
  static std::size_t padded_length(std::size_t n, const std::vector<std::size_t>& frame_lengths);

 private:
  std::vector<LayerSpec> layers_;
  std::size_t signal_length_;
};

struct CoefficientAddress {
  std::size_t layer = 0;
  std::size_t channel = 0;
  std::size_t frame = 0;
  std::size_t bin = 0;

  friend bool operator==(const CoefficientAddress&, const CoefficientAddress&) = default;
};

// X: per layer, per channel coefficient grids matching a Dictionary.
class SparseRepresentation {
 public:
  SparseRepresentation() = default;
  // All-zero representation shaped for `dict` and `channels`.
  SparseRepresentation(const Dictionary& dict, std::size_t channels);

  std::size_t layer_count() const { return layers_.size(); }
  std::size_t channel_count() const { return layers_.empty() ? 0 : layers_[0].size(); }

  LayerCoefficients& grid(std::size_t layer, std::size_t channel) {
    return layers_[layer][channel];
  }
  const LayerCoefficients& grid(std::size_t layer, std::size_t channel) const {
    return layers_[layer][channel];
  }

  double& at(const CoefficientAddress& a) { return layers_[a.layer][a.channel].at(a.frame, a.bin); }
  double at(const CoefficientAddress& a) const {
    return layers_[a.layer][a.channel].at(a.frame, a.bin);
  }

  // Total number of coefficient addresses over layers and channels.
  std::size_t size() const;
  std::size_t flatten(const CoefficientAddress& a) const;
  CoefficientAddress unflatten(std::size_t index) const;

  // Throws DimensionError when the grids do not match `dict` / `channels`.
  void check_shape(const Dictionary& dict, std::size_t channels) const;

  SparseRepresentation& operator*=(double c);

 private:
  std::vector<std::vector<LayerCoefficients>> layers_;  // [layer][channel]
};

// x = XB: per channel, the sum over layers of each layer's synthesis.
MultichannelSignal synthesize(const SparseRepresentation& rep, const Dictionary& dict,
                              int sample_rate = 48000);

// Synthesis of one layer only.
MultichannelSignal synthesize_layer(const SparseRepresentation& rep, const Dictionary& dict,
                                    std::size_t layer, int sample_rate = 48000);

// Adjoint of synthesize: per layer MDCT analysis of every channel.
SparseRepresentation analyze_adjoint(const MultichannelSignal& signal, const Dictionary& dict);

// Sum of absolute values over every address. Throws ValidationError on NaN.
double l1_norm(const SparseRepresentation& rep);

double inner_product(const SparseRepresentation& a, const SparseRepresentation& b);

// One CSV per layer, named <prefix>_layer<N>.csv: rows are frames, columns
// are bins, values are the Euclidean norm across channels at each address.
// Returns the written paths.
std::vector<std::filesystem::path> write_layer_csv(const SparseRepresentation& rep,
                                                   const Dictionary& dict,
                                                   const std::filesystem::path& prefix);

}  // namespace sparsehoa
