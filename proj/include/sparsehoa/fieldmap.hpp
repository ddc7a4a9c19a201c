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
#include <string_view>
#include <vector>

#include "sparsehoa/signal.hpp"

namespace sparsehoa {

// Grid samples: azimuth_i = -180 + i*360/n_az (i < n_az) and
// elevation_j = -90 + j*180/(n_el - 1) (j < n_el), both in degrees.
struct MapGrid {
  std::size_t n_az = 72;
  std::size_t n_el = 37;

  double azimuth(std::size_t i) const;
  double elevation(std::size_t j) const;
};

struct EnergyMap {
  MapGrid grid;
  std::size_t window_start = 0;
  std::size_t window_length = 0;
  std::vector<double> values;  // [el][az], row-major

  double at(std::size_t az, std::size_t el) const { return values[el * grid.n_az + az]; }
  double max() const;
  // Mean over the sphere with cos(elevation) area weights.
  double mean() const;
  double peak_to_mean() const { return max() / mean(); }
  // (az index, el index) of the maximum cell.
  std::pair<std::size_t, std::size_t> argmax() const;
};

// Plane-wave-decomposition beam power of an SN3D/ACN signal over the window
// [start, start + length). length == 0 means "to the end of the signal".
EnergyMap energy_map(const MultichannelSignal& hoa, const MapGrid& grid, std::size_t start = 0,
                     std::size_t length = 0);

enum class MapFormat { Csv, Pgm };
MapFormat parse_map_format(std::string_view name);

void write_map(const EnergyMap& map, const std::filesystem::path& path, MapFormat format);

// Reads the CSV layout produced by write_map.
EnergyMap read_map_csv(const std::filesystem::path& path);

}  // namespace sparsehoa
