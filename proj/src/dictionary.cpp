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

#include "sparsehoa/dictionary.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "sparsehoa/error.hpp"
#include "sparsehoa/parallel.hpp"

namespace sparsehoa {

Dictionary::Dictionary(std::vector<std::size_t> frame_lengths, std::size_t signal_length)
    : signal_length_(signal_length) {
  if (frame_lengths.empty()) throw ValidationError("dictionary needs at least one layer");
  for (std::size_t i = 0; i < frame_lengths.size(); ++i) {
    if (i > 0 && frame_lengths[i] <= frame_lengths[i - 1])
      throw ValidationError("layer frame lengths must be strictly increasing");
    layers_.emplace_back(frame_lengths[i]);
  }
  if (signal_length == 0 || signal_length % max_hop() != 0)
    throw DimensionError("signal length " + std::to_string(signal_length) +
                         " is not a positive multiple of the longest hop " +
                         std::to_string(max_hop()));
}

std::size_t Dictionary::padded_length(std::size_t n, const std::vector<std::size_t>& frame_lengths) {
  std::size_t hop = 1;
  for (std::size_t len : frame_lengths) hop = std::max(hop, len / 2);
  return std::max<std::size_t>(1, (n + hop - 1) / hop) * hop;
}

SparseRepresentation::SparseRepresentation(const Dictionary& dict, std::size_t channels) {
  if (channels == 0) throw DimensionError("representation needs at least one channel");
  layers_.reserve(dict.layer_count());
  for (const auto& layer : dict.layers()) {
    layers_.emplace_back(channels,
                         LayerCoefficients(layer.frames_for(dict.signal_length()), layer.bins()));
  }
}

std::size_t SparseRepresentation::size() const {
  std::size_t n = 0;
  for (const auto& layer : layers_)
    for (const auto& g : layer) n += g.values.size();
  return n;
}

std::size_t SparseRepresentation::flatten(const CoefficientAddress& a) const {
  if (a.layer >= layers_.size() || a.channel >= layers_[a.layer].size())
    throw DimensionError("coefficient address out of range");
  const auto& g = layers_[a.layer][a.channel];
  if (a.frame >= g.frames || a.bin >= g.bins) throw DimensionError("coefficient address out of range");
  std::size_t offset = 0;
  for (std::size_t l = 0; l < a.layer; ++l)
    for (const auto& grid : layers_[l]) offset += grid.values.size();
  offset += a.channel * g.values.size();
  return offset + a.frame * g.bins + a.bin;
}

CoefficientAddress SparseRepresentation::unflatten(std::size_t index) const {
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const std::size_t per_channel = layers_[l][0].values.size();
    const std::size_t span = per_channel * layers_[l].size();
    if (index < span) {
      const auto& g = layers_[l][0];
      const std::size_t c = index / per_channel;
      const std::size_t rest = index % per_channel;
      return {l, c, rest / g.bins, rest % g.bins};
    }
    index -= span;
  }
  throw DimensionError("flat coefficient index out of range");
}

void SparseRepresentation::check_shape(const Dictionary& dict, std::size_t channels) const {
  if (layers_.size() != dict.layer_count())
    throw DimensionError("representation has " + std::to_string(layers_.size()) +
                         " layers, dictionary has " + std::to_string(dict.layer_count()));
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& spec = dict.layers()[l];
    if (layers_[l].size() != channels)
      throw DimensionError("representation channel count does not match");
    for (const auto& g : layers_[l]) {
      if (g.frames != spec.frames_for(dict.signal_length()) || g.bins != spec.bins() ||
          g.values.size() != g.frames * g.bins)
        throw DimensionError("layer " + std::to_string(spec.frame_length()) +
                             " grid does not match the dictionary");
    }
  }
}

SparseRepresentation& SparseRepresentation::operator*=(double c) {
  for (auto& layer : layers_)
    for (auto& g : layer)
      for (double& v : g.values) v *= c;
  return *this;
}

MultichannelSignal synthesize_layer(const SparseRepresentation& rep, const Dictionary& dict,
                                    std::size_t layer, int sample_rate) {
  const std::size_t channels = rep.channel_count();
  rep.check_shape(dict, channels);
  MultichannelSignal out(channels, dict.signal_length(), sample_rate);
  parallel_for(channels, [&](std::size_t c) {
    mdct_synthesize_add(rep.grid(layer, c).values, dict.layers()[layer], out.channel(c));
  });
  return out;
}

MultichannelSignal synthesize(const SparseRepresentation& rep, const Dictionary& dict,
                              int sample_rate) {
  const std::size_t channels = rep.channel_count();
  rep.check_shape(dict, channels);
  MultichannelSignal out(channels, dict.signal_length(), sample_rate);
  parallel_for(channels, [&](std::size_t c) {
    for (std::size_t l = 0; l < dict.layer_count(); ++l)
      mdct_synthesize_add(rep.grid(l, c).values, dict.layers()[l], out.channel(c));
  });
  return out;
}

SparseRepresentation analyze_adjoint(const MultichannelSignal& signal, const Dictionary& dict) {
  if (signal.length() != dict.signal_length())
    throw DimensionError("signal has " + std::to_string(signal.length()) +
                         " samples, dictionary expects " + std::to_string(dict.signal_length()));
  SparseRepresentation rep(dict, signal.channel_count());
  const std::size_t layers = dict.layer_count();
  parallel_for(layers * signal.channel_count(), [&](std::size_t task) {
    const std::size_t l = task % layers;
    const std::size_t c = task / layers;
    mdct_analyze_into(signal.channel(c), dict.layers()[l], rep.grid(l, c).values);
  });
  return rep;
}

double l1_norm(const SparseRepresentation& rep) {
  double sum = 0.0;
  for (std::size_t l = 0; l < rep.layer_count(); ++l)
    for (std::size_t c = 0; c < rep.channel_count(); ++c)
      for (double v : rep.grid(l, c).values) {
        if (std::isnan(v)) throw ValidationError("representation contains NaN");
        sum += std::abs(v);
      }
  return sum;
}

double inner_product(const SparseRepresentation& a, const SparseRepresentation& b) {
  if (a.layer_count() != b.layer_count() || a.channel_count() != b.channel_count())
    throw DimensionError("representations differ in shape");
  double sum = 0.0;
  for (std::size_t l = 0; l < a.layer_count(); ++l)
    for (std::size_t c = 0; c < a.channel_count(); ++c) {
      const auto& x = a.grid(l, c).values;
      const auto& y = b.grid(l, c).values;
      if (x.size() != y.size()) throw DimensionError("representations differ in shape");
      for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
    }
  return sum;
}

std::vector<std::filesystem::path> write_layer_csv(const SparseRepresentation& rep,
                                                   const Dictionary& dict,
                                                   const std::filesystem::path& prefix) {
  rep.check_shape(dict, rep.channel_count());
  std::vector<std::filesystem::path> written;
  char buf[32];
  for (std::size_t l = 0; l < dict.layer_count(); ++l) {
    std::filesystem::path path = prefix;
    path += "_layer" + std::to_string(dict.layers()[l].frame_length()) + ".csv";
    std::ofstream out(path);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    const auto& g0 = rep.grid(l, 0);
    for (std::size_t f = 0; f < g0.frames; ++f) {
      for (std::size_t k = 0; k < g0.bins; ++k) {
        double e = 0.0;
        for (std::size_t c = 0; c < rep.channel_count(); ++c) {
          const double v = rep.grid(l, c).at(f, k);
          e += v * v;
        }
        std::snprintf(buf, sizeof buf, "%.9g", std::sqrt(e));
        if (k) out << ',';
        out << buf;
      }
      out << '\n';
    }
    if (!out) throw IoError(path.string() + ": write failed");
    written.push_back(std::move(path));
  }
  return written;
}

}  // namespace sparsehoa
