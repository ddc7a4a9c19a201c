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

#include <filesystem>
#include <string_view>

#include "sparsehoa/signal.hpp"

namespace sparsehoa {

// Reads a RIFF/WAVE file. Accepts IEEE float32 (format code 3) and 16/24-bit
// PCM (format code 1, normalized by 2^(bits-1)). WAVE_FORMAT_EXTENSIBLE is
// accepted when its sub-format resolves to one of those.
MultichannelSignal read_wav(const std::filesystem::path& path);

// Writes interleaved float32 (format code 3). Refuses non-finite samples.
void write_wav(const MultichannelSignal& signal, const std::filesystem::path& path);

// First-order channel conventions.
//  - PaperBFormat: (W, X, Y, Z) with W carrying pressure scaled by 2^(-1/2).
//  - AmbixSn3d: ACN order (W, Y, Z, X), SN3D, W carries pressure.
enum class AmbisonicConvention { PaperBFormat, AmbixSn3d };

AmbisonicConvention parse_convention(std::string_view name);

// Gain and permutation between the conventions; identity when from == to.
// Throws DimensionError unless the signal has exactly four channels.
MultichannelSignal convert_convention(const MultichannelSignal& signal,
                                      AmbisonicConvention from,
                                      AmbisonicConvention to);

}  // namespace sparsehoa
