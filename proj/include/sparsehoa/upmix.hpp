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
#include <string_view>
#include <vector>

#include "sparsehoa/blocks.hpp"
#include "sparsehoa/dictionary.hpp"
#include "sparsehoa/signal.hpp"
#include "sparsehoa/solver.hpp"

namespace sparsehoa {

enum class UpmixMode {
  Linear,         // single-layer MDCT, no solver
  Sparse,         // multi-layer solver with the aliasing loss
  SparseNoAlias,  // multi-layer solver, aliasing weight forced to zero
};

UpmixMode parse_upmix_mode(std::string_view name);

struct UpmixOptions {
  int order = 7;
  UpmixMode mode = UpmixMode::Sparse;
  std::vector<std::size_t> layers = kDefaultLayerLengths;
  std::size_t linear_frame_length = 2048;
  SolverConfig solver;
  std::size_t block_length = kDefaultBlockLength;
  std::size_t crossfade = kDefaultCrossfade;
};

// Representation of one padded block together with the dictionary it lives in.
struct Decomposition {
  Dictionary dictionary;
  SparseRepresentation representation;
  SolverTrace trace;  // empty in linear mode
};

// Pads `block` to the dictionary length and decomposes it per `options.mode`.
Decomposition decompose(const MultichannelSignal& block, const UpmixOptions& options);

// Per-address extract_mdct on the four channels, SH re-encoding and
// resynthesis of every output channel. Returns (order+1)^2 AmbiX channels of
// dict.signal_length() samples.
MultichannelSignal encode_representation(const SparseRepresentation& foa_rep,
                                         const Dictionary& dict, int order, int sample_rate);

struct UpmixResult {
  MultichannelSignal hoa;
  std::vector<SolverTrace> traces;  // one per block (sparse modes only)
};

// `foa` is a four-channel PaperBFormat signal. Output is AmbixSn3d with the
// input's length.
UpmixResult upmix(const MultichannelSignal& foa, const UpmixOptions& options);

// Keeps the first (order+1)^2 channels. Throws DimensionError when the
// channel count is not (L+1)^2 for some L >= max(order, 1).
MultichannelSignal truncate_order(const MultichannelSignal& hoa, int order);

// Ambisonic order of a (L+1)^2-channel signal; throws DimensionError otherwise.
int order_of_channel_count(std::size_t channels);

struct DoaRow {
  std::size_t layer_length = 0;
  std::size_t frame = 0;
  std::size_t bin = 0;
  double azimuth_deg = 0.0;
  double elevation_deg = 0.0;
  double amp_directional = 0.0;
  double amp_omni = 0.0;
  bool has_direction = false;
};

// One row per address whose four-channel bin is not identically zero.
std::vector<DoaRow> collect_doa(const SparseRepresentation& foa_rep, const Dictionary& dict);

}  // namespace sparsehoa
