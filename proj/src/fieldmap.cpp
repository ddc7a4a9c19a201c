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

#include "sparsehoa/fieldmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "sparsehoa/error.hpp"
#include "sparsehoa/spherical.hpp"
#include "sparsehoa/upmix.hpp"

namespace sparsehoa {

double MapGrid::azimuth(std::size_t i) const {
  return -180.0 + 360.0 * static_cast<double>(i) / static_cast<double>(n_az);
}

double MapGrid::elevation(std::size_t j) const {
  if (n_el == 1) return 0.0;
  return -90.0 + 180.0 * static_cast<double>(j) / static_cast<double>(n_el - 1);
}

namespace {

// Relative solid angle of the elevation band represented by row j.
double band_weight(const MapGrid& grid, std::size_t j) {
  if (grid.n_el == 1) return 1.0;
  constexpr double kRad = std::numbers::pi / 180.0;
  const double half = 90.0 / static_cast<double>(grid.n_el - 1);
  const double lo = std::max(-90.0, grid.elevation(j) - half);
  const double hi = std::min(90.0, grid.elevation(j) + half);
  return std::sin(hi * kRad) - std::sin(lo * kRad);
}

void check_grid(const MapGrid& grid) {
  if (grid.n_az == 0 || grid.n_el == 0) throw DimensionError("map grid must be non-empty");
}

}  // namespace

double EnergyMap::max() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double EnergyMap::mean() const {
  double sum = 0.0, weight = 0.0;
  for (std::size_t j = 0; j < grid.n_el; ++j) {
    const double w = band_weight(grid, j);
    for (std::size_t i = 0; i < grid.n_az; ++i) sum += w * at(i, j);
    weight += w * static_cast<double>(grid.n_az);
  }
  return weight > 0.0 ? sum / weight : 0.0;
}

std::pair<std::size_t, std::size_t> EnergyMap::argmax() const {
  const auto it = std::max_element(values.begin(), values.end());
  const auto index = static_cast<std::size_t>(it - values.begin());
  return {index % grid.n_az, index / grid.n_az};
}

EnergyMap energy_map(const MultichannelSignal& hoa, const MapGrid& grid, std::size_t start,
                     std::size_t length) {
  check_grid(grid);
  const int order = order_of_channel_count(hoa.channel_count());
  if (start > hoa.length()) throw DimensionError("map window starts past the signal end");
  if (length == 0) length = hoa.length() - start;
  if (start + length > hoa.length()) throw DimensionError("map window exceeds the signal");
  const std::size_t channels = hoa.channel_count();

  EnergyMap map;
  map.grid = grid;
  map.window_start = start;
  map.window_length = length;
  map.values.assign(grid.n_az * grid.n_el, 0.0);
  if (length == 0) return map;

  // Beam power is w' R w with R the channel covariance over the window.
  std::vector<double> cov(channels * channels, 0.0);
  for (std::size_t a = 0; a < channels; ++a) {
    auto xa = hoa.channel(a).subspan(start, length);
    for (std::size_t b = a; b < channels; ++b) {
      auto xb = hoa.channel(b).subspan(start, length);
      double s = 0.0;
      for (std::size_t n = 0; n < length; ++n) s += xa[n] * xb[n];
      cov[a * channels + b] = cov[b * channels + a] = s / static_cast<double>(length);
    }
  }

  // Plane-wave decomposition weights for SN3D input: (2l+1) Y_SN3D / (L+1)^2.
  const double norm = 1.0 / static_cast<double>(channels_for_order(order));
  std::vector<double> w(channels);
  for (std::size_t j = 0; j < grid.n_el; ++j) {
    for (std::size_t i = 0; i < grid.n_az; ++i) {
      const ShVector sh = sh_encode(from_azimuth_elevation(grid.azimuth(i), grid.elevation(j)), order);
      for (std::size_t c = 0; c < channels; ++c) {
        const double f = n3d_factor(degree_of_acn(c));
        w[c] = f * f * sh[c] * norm;
      }
      double power = 0.0;
      for (std::size_t a = 0; a < channels; ++a) {
        double row = 0.0;
        for (std::size_t b = 0; b < channels; ++b) row += cov[a * channels + b] * w[b];
        power += w[a] * row;
      }
      map.values[j * grid.n_az + i] = std::max(0.0, power);
    }
  }
  return map;
}

MapFormat parse_map_format(std::string_view name) {
  if (name == "csv") return MapFormat::Csv;
  if (name == "pgm") return MapFormat::Pgm;
  throw ValidationError("unknown map format '" + std::string(name) + "'");
}

void write_map(const EnergyMap& map, const std::filesystem::path& path, MapFormat format) {
  check_grid(map.grid);
  if (map.values.size() != map.grid.n_az * map.grid.n_el)
    throw DimensionError("map values do not match the grid");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  if (format == MapFormat::Csv) {
    char buf[32];
    out << "el\\az";
    for (std::size_t i = 0; i < map.grid.n_az; ++i) {
      std::snprintf(buf, sizeof buf, "%.9g", map.grid.azimuth(i));
      out << ',' << buf;
    }
    out << '\n';
    for (std::size_t j = 0; j < map.grid.n_el; ++j) {
      std::snprintf(buf, sizeof buf, "%.9g", map.grid.elevation(j));
      out << buf;
      for (std::size_t i = 0; i < map.grid.n_az; ++i) {
        std::snprintf(buf, sizeof buf, "%.9g", map.at(i, j));
        out << ',' << buf;
      }
      out << '\n';
    }
  } else {
    out << "P5\n" << map.grid.n_az << ' ' << map.grid.n_el << "\n255\n";
    const double peak = map.max();
    std::string row(map.grid.n_az, '\0');
    // Top image row is the highest elevation.
    for (std::size_t jj = map.grid.n_el; jj-- > 0;) {
      for (std::size_t i = 0; i < map.grid.n_az; ++i) {
        const double v = peak > 0.0 ? map.at(i, jj) / peak : 0.0;
        row[i] = static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * v)));
      }
      out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
  }
  if (!out) throw IoError(path.string() + ": write failed");
}

EnergyMap read_map_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty map file");
  const auto header = split(line);
  if (header.size() < 2) throw ParseError(path.string() + ": map header has no azimuths");
  EnergyMap map;
  map.grid.n_az = header.size() - 1;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw ParseError(path.string() + ": map row " + std::to_string(rows.size() + 1) +
                       " has the wrong number of columns");
    std::vector<double> row;
    for (std::size_t i = 1; i < cells.size(); ++i) row.push_back(std::stod(cells[i]));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path.string() + ": map has no rows");
  map.grid.n_el = rows.size();
  for (const auto& row : rows) map.values.insert(map.values.end(), row.begin(), row.end());
  return map;
}

}  // namespace sparsehoa
