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

#include "sparsehoa/upmix.hpp"

#include <cmath>
#include <string>

#include "sparsehoa/error.hpp"
#include "sparsehoa/parallel.hpp"
#include "sparsehoa/planewave.hpp"
#include "sparsehoa/spherical.hpp"

namespace sparsehoa {

UpmixMode parse_upmix_mode(std::string_view name) {
  if (name == "linear") return UpmixMode::Linear;
  if (name == "sparse") return UpmixMode::Sparse;
  if (name == "sparse-noalias") return UpmixMode::SparseNoAlias;
  throw ValidationError("unknown upmix mode '" + std::string(name) + "'");
}

namespace {

MultichannelSignal zero_pad(const MultichannelSignal& s, std::size_t length) {
  std::vector<std::vector<double>> channels(s.channels());
  for (auto& ch : channels) ch.resize(length, 0.0);
  return MultichannelSignal(std::move(channels), s.sample_rate());
}

MultichannelSignal trim(MultichannelSignal s, std::size_t length) {
  std::vector<std::vector<double>> channels(s.channels());
  for (auto& ch : channels) ch.resize(length);
  return MultichannelSignal(std::move(channels), s.sample_rate());
}

}  // namespace

Decomposition decompose(const MultichannelSignal& block, const UpmixOptions& options) {
  if (options.mode == UpmixMode::Linear) {
    const std::vector<std::size_t> lengths{options.linear_frame_length};
    Dictionary dict(lengths, Dictionary::padded_length(block.length(), lengths));
    auto rep = analyze_adjoint(zero_pad(block, dict.signal_length()), dict);
    return {std::move(dict), std::move(rep), {}};
  }
  Dictionary dict(options.layers, Dictionary::padded_length(block.length(), options.layers));
  SolverConfig cfg = options.solver;
  if (options.mode == UpmixMode::SparseNoAlias) cfg.alias_weight = 0.0;
  auto solved = solve(zero_pad(block, dict.signal_length()), dict, cfg);
  return {std::move(dict), std::move(solved.representation), std::move(solved.trace)};
}

MultichannelSignal encode_representation(const SparseRepresentation& foa_rep,
                                         const Dictionary& dict, int order, int sample_rate) {
  if (foa_rep.channel_count() != 4)
    throw DimensionError("HOA encoding needs a four-channel representation");
  foa_rep.check_shape(dict, 4);
  const std::size_t out_channels = channels_for_order(order);
  MultichannelSignal out(out_channels, dict.signal_length(), sample_rate);

  for (std::size_t l = 0; l < dict.layer_count(); ++l) {
    const std::size_t size = foa_rep.grid(l, 0).values.size();
    std::vector<std::vector<double>> grids(out_channels, std::vector<double>(size, 0.0));
    for (std::size_t i = 0; i < size; ++i) {
      const FoaRealBin bin{foa_rep.grid(l, 0).values[i], foa_rep.grid(l, 1).values[i],
                           foa_rep.grid(l, 2).values[i], foa_rep.grid(l, 3).values[i]};
      if (bin.w == 0.0 && bin.x == 0.0 && bin.y == 0.0 && bin.z == 0.0) continue;
      const PlaneWaveEstimate est = extract_mdct(bin);
      // The omnidirectional part goes to ACN 0 only.
      grids[0][i] = est.amp_omni;
      if (est.direction) {
        const ShVector sh = sh_encode(*est.direction, order);
        for (std::size_t ch = 0; ch < out_channels; ++ch)
          grids[ch][i] += est.amp_directional * sh[ch];
      }
    }
    const LayerSpec& spec = dict.layers()[l];
    parallel_for(out_channels, [&](std::size_t ch) {
      mdct_synthesize_add(grids[ch], spec, out.channel(ch));
    });
  }
  return out;
}

UpmixResult upmix(const MultichannelSignal& foa, const UpmixOptions& options) {
  if (foa.channel_count() != 4)
    throw DimensionError("upmix needs a four-channel first-order input, got " +
                         std::to_string(foa.channel_count()));
  if (options.order < 1 || options.order > kMaxOrder)
    throw ValidationError("ambisonic order must be in [1, 7]");
  if (!foa.all_finite()) throw ValidationError("upmix input contains non-finite samples");

  const std::size_t out_channels = channels_for_order(options.order);
  UpmixResult result;
  const auto blocks = plan_blocks(foa.length(), options.block_length, options.crossfade);
  BlockMixer mixer(blocks, out_channels, foa.length(), foa.sample_rate());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto part = extract_block(foa, blocks[b]);
    auto dec = decompose(part, options);
    auto hoa = encode_representation(dec.representation, dec.dictionary, options.order,
                                     foa.sample_rate());
    mixer.add(b, trim(std::move(hoa), blocks[b].length));
    if (options.mode != UpmixMode::Linear) result.traces.push_back(std::move(dec.trace));
  }
  result.hoa = mixer.take();
  return result;
}

int order_of_channel_count(std::size_t channels) {
  const auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(channels))));
  if (root < 2 || root * root != channels)
    throw DimensionError("channel count " + std::to_string(channels) +
                         " is not (L+1)^2 for an order L >= 1");
  return static_cast<int>(root) - 1;
}

MultichannelSignal truncate_order(const MultichannelSignal& hoa, int order) {
  const int have = order_of_channel_count(hoa.channel_count());
  if (order < 1 || order > have)
    throw DimensionError("cannot truncate an order-" + std::to_string(have) + " signal to order " +
                         std::to_string(order));
  std::vector<std::vector<double>> channels(hoa.channels().begin(),
                                            hoa.channels().begin() +
                                                static_cast<std::ptrdiff_t>(channels_for_order(order)));
  return MultichannelSignal(std::move(channels), hoa.sample_rate());
}

std::vector<DoaRow> collect_doa(const SparseRepresentation& foa_rep, const Dictionary& dict) {
  if (foa_rep.channel_count() != 4)
    throw DimensionError("DOA extraction needs a four-channel representation");
  foa_rep.check_shape(dict, 4);
  std::vector<DoaRow> rows;
  for (std::size_t l = 0; l < dict.layer_count(); ++l) {
    const auto& g = foa_rep.grid(l, 0);
    for (std::size_t f = 0; f < g.frames; ++f) {
      for (std::size_t k = 0; k < g.bins; ++k) {
        const FoaRealBin bin{foa_rep.grid(l, 0).at(f, k), foa_rep.grid(l, 1).at(f, k),
                             foa_rep.grid(l, 2).at(f, k), foa_rep.grid(l, 3).at(f, k)};
        if (bin.w == 0.0 && bin.x == 0.0 && bin.y == 0.0 && bin.z == 0.0) continue;
        const auto est = extract_mdct(bin);
        DoaRow row;
        row.layer_length = dict.layers()[l].frame_length();
        row.frame = f;
        row.bin = k;
        row.amp_directional = est.amp_directional;
        row.amp_omni = est.amp_omni;
        if (est.direction) {
          const auto ae = to_azimuth_elevation(*est.direction);
          row.azimuth_deg = ae.azimuth_deg;
          row.elevation_deg = ae.elevation_deg;
          row.has_direction = true;
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace sparsehoa
