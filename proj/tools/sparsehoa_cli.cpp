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

// Command-line front end: upmix, doa, fieldmap and layers.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sparsehoa/audio_io.hpp"
#include "sparsehoa/blocks.hpp"
#include "sparsehoa/error.hpp"
#include "sparsehoa/fieldmap.hpp"
#include "sparsehoa/parallel.hpp"
#include "sparsehoa/planewave.hpp"
#include "sparsehoa/stft.hpp"
#include "sparsehoa/upmix.hpp"

namespace sh = sparsehoa;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitDivergence = 4;

constexpr std::size_t kHarpexFrame = 1024;

// Flags shared by every command that runs the decomposition.
struct DecompositionArgs {
  std::string mode = "sparse";
  std::vector<std::size_t> layers = sh::kDefaultLayerLengths;
  int iterations = 2000;
  std::optional<double> alpha0;
  std::optional<double> step;
  double lambda_alias = 0.5;
  bool independent = false;
  std::size_t block = sh::kDefaultBlockLength;
  std::string in_convention = "ambix";
  unsigned threads = 1;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--mode", mode, "Decomposition: linear, sparse or sparse-noalias")
        ->check(CLI::IsMember({"linear", "sparse", "sparse-noalias"}))
        ->capture_default_str();
    cmd.add_option("--layers", layers, "Comma-separated MDCT frame lengths")
        ->delimiter(',')
        ->capture_default_str();
    cmd.add_option("--iters", iterations, "Solver iterations")->capture_default_str();
    cmd.add_option("--alpha0", alpha0, "Initial L1 weight (default: derived from the input)");
    cmd.add_option("--step", step, "Gradient step (default: 1 / (2 * layers))");
    cmd.add_option("--lambda-alias", lambda_alias, "Aliasing loss weight")->capture_default_str();
    cmd.add_flag("--independent", independent, "Shrink each channel separately");
    cmd.add_option("--block", block, "Block length in samples")->capture_default_str();
    cmd.add_option("--in-convention", in_convention, "Input convention: ambix or fuma")
        ->check(CLI::IsMember({"ambix", "fuma"}))
        ->capture_default_str();
    cmd.add_option("--threads", threads, "Worker threads (1 keeps output bit-reproducible)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  sh::UpmixOptions options(int order) const {
    sh::UpmixOptions o;
    o.order = order;
    o.mode = sh::parse_upmix_mode(mode);
    o.layers = layers;
    o.solver.iterations = iterations;
    o.solver.alpha0 = alpha0;
    o.solver.step_size = step;
    o.solver.alias_weight = lambda_alias;
    o.solver.group_sparsity = !independent;
    o.block_length = block;
    return o;
  }
};

sh::MultichannelSignal read_foa(const std::string& path, const std::string& convention) {
  auto in = sh::read_wav(path);
  if (in.channel_count() != 4)
    throw sh::DimensionError(path + ": expected 4 channels, got " +
                             std::to_string(in.channel_count()));
  return sh::convert_convention(in, sh::parse_convention(convention),
                                sh::AmbisonicConvention::PaperBFormat);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw sh::IoError(path + ": cannot open for writing");
  return out;
}

void run_upmix(const DecompositionArgs& args, int order, const std::string& in_path,
               const std::string& out_path, const std::string& trace_path) {
  const auto foa = read_foa(in_path, args.in_convention);
  const auto result = sh::upmix(foa, args.options(order));
  sh::write_wav(result.hoa, out_path);
  if (!trace_path.empty()) sh::write_trace_csv(result.traces, trace_path);
}

void run_doa_mdct(const DecompositionArgs& args, const sh::MultichannelSignal& foa,
                  std::ostream& out) {
  const auto opts = args.options(1);
  out << "block,layer,frame,bin,azimuth,elevation,amp_directional,amp_omni\n";
  const auto blocks = sh::plan_blocks(foa.length(), opts.block_length, opts.crossfade);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto dec = sh::decompose(sh::extract_block(foa, blocks[b]), opts);
    for (const auto& r : sh::collect_doa(dec.representation, dec.dictionary)) {
      out << b << ',' << r.layer_length << ',' << r.frame << ',' << r.bin << ',';
      if (r.has_direction) out << fmt(r.azimuth_deg) << ',' << fmt(r.elevation_deg);
      else out << ',';
      out << ',' << fmt(r.amp_directional) << ',' << fmt(r.amp_omni) << '\n';
    }
  }
}

void write_harpex_row(std::ostream& out, std::size_t frame, std::size_t bin, int wave,
                      const std::optional<sh::Vec3>& dir, double magnitude, bool valid) {
  out << frame << ',' << bin << ',' << wave << ',';
  if (dir) {
    const auto ae = sh::to_azimuth_elevation(*dir);
    out << fmt(ae.azimuth_deg) << ',' << fmt(ae.elevation_deg);
  } else {
    out << ',';
  }
  out << ',' << fmt(magnitude) << ',' << (valid ? 1 : 0) << '\n';
}

void run_doa_harpex(const sh::MultichannelSignal& foa, std::ostream& out) {
  std::vector<sh::StftFrames> spectra;
  for (std::size_t c = 0; c < 4; ++c) spectra.push_back(sh::stft_analyze(foa.channel(c), kHarpexFrame));
  out << "frame,bin,wave,azimuth,elevation,magnitude,valid\n";
  std::size_t total = 0, invalid = 0;
  for (std::size_t f = 0; f < spectra[0].frames; ++f) {
    for (std::size_t k = 0; k < spectra[0].bins; ++k) {
      const sh::FoaComplexBin bin{spectra[0].at(f, k), spectra[1].at(f, k), spectra[2].at(f, k),
                                  spectra[3].at(f, k)};
      if (bin.w == 0.0 && bin.x == 0.0 && bin.y == 0.0 && bin.z == 0.0) continue;
      ++total;
      const auto est = sh::extract_harpex(bin);
      if (est.valid) {
        write_harpex_row(out, f, k, 1, est.direction_1, std::abs(est.amp_1), true);
        write_harpex_row(out, f, k, 2, est.direction_2, std::abs(est.amp_2), true);
      } else {
        ++invalid;
        write_harpex_row(out, f, k, 1, est.fallback_real->direction,
                         std::abs(est.fallback_real->amp_directional), false);
        write_harpex_row(out, f, k, 2, est.fallback_imag->direction,
                         std::abs(est.fallback_imag->amp_directional), false);
      }
    }
  }
  std::cerr << "harpex: " << invalid << " of " << total << " bins invalid\n";
}

sh::MapGrid parse_grid(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_a = 0, used_b = 0;
    const auto az = std::stoul(text.substr(0, x), &used_a);
    const auto el = std::stoul(text.substr(x + 1), &used_b);
    if (used_a != x || used_b != text.size() - x - 1 || az < 1 || el < 2)
      throw std::invalid_argument(text);
    return {az, el};
  } catch (const std::logic_error&) {
    throw sh::ValidationError("grid must look like <azimuths>x<elevations>, e.g. 72x37");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse multi-resolution MDCT upmixing of first-order ambisonics"};
  app.require_subcommand(1);

  DecompositionArgs upmix_args;
  int order = 7;
  std::string upmix_in, upmix_out, trace_path;
  auto* upmix = app.add_subcommand("upmix", "Upmix a first-order WAV to higher-order AmbiX");
  upmix->add_option("input", upmix_in, "Four-channel input WAV")->required();
  upmix->add_option("output", upmix_out, "Output WAV")->required();
  upmix->add_option("--order", order, "Output ambisonic order")
      ->check(CLI::Range(1, 7))
      ->capture_default_str();
  upmix->add_option("--trace", trace_path, "Write the solver trace CSV here");
  upmix_args.add_to(*upmix);

  DecompositionArgs doa_args;
  std::string estimator = "mdct", doa_in, doa_out;
  auto* doa = app.add_subcommand("doa", "Dump per-bin direction estimates as CSV");
  doa->add_option("input", doa_in, "Four-channel input WAV")->required();
  doa->add_option("output", doa_out, "Output CSV")->required();
  doa->add_option("--estimator", estimator, "mdct or harpex")
      ->check(CLI::IsMember({"mdct", "harpex"}))
      ->capture_default_str();
  doa_args.add_to(*doa);

  std::string map_in, map_out, grid_text = "72x37", format = "csv";
  std::size_t start = 0, length = 0;
  auto* fieldmap = app.add_subcommand("fieldmap", "Render a directional energy map");
  fieldmap->add_option("input", map_in, "AmbiX WAV with (L+1)^2 channels")->required();
  fieldmap->add_option("output", map_out, "Output map file")->required();
  fieldmap->add_option("--grid", grid_text, "Grid as <azimuths>x<elevations>")
      ->capture_default_str();
  fieldmap->add_option("--start", start, "First sample of the window")->capture_default_str();
  fieldmap->add_option("--length", length, "Window length in samples (0: to the end)")
      ->capture_default_str();
  fieldmap->add_option("--format", format, "csv or pgm")
      ->check(CLI::IsMember({"csv", "pgm"}))
      ->capture_default_str();

  DecompositionArgs layer_args;
  std::string layers_in, layers_prefix;
  auto* layers = app.add_subcommand("layers", "Write per-layer coefficient magnitude CSVs");
  layers->add_option("input", layers_in, "Four-channel input WAV")->required();
  layers->add_option("prefix", layers_prefix, "Output prefix (<prefix>_layer<N>.csv)")
      ->required();
  layer_args.add_to(*layers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*upmix) {
      sh::set_thread_count(upmix_args.threads);
      run_upmix(upmix_args, order, upmix_in, upmix_out, trace_path);
    } else if (*doa) {
      sh::set_thread_count(doa_args.threads);
      const auto foa = read_foa(doa_in, doa_args.in_convention);
      auto out = open_output(doa_out);
      if (estimator == "harpex") run_doa_harpex(foa, out);
      else run_doa_mdct(doa_args, foa, out);
      if (!out) throw sh::IoError(doa_out + ": write failed");
    } else if (*fieldmap) {
      const auto grid = parse_grid(grid_text);
      const auto hoa = sh::read_wav(map_in);
      const auto map = sh::energy_map(hoa, grid, start, length);
      sh::write_map(map, map_out, sh::parse_map_format(format));
      const auto [az, el] = map.argmax();
      std::cout << "peak azimuth " << fmt(grid.azimuth(az)) << " elevation "
                << fmt(grid.elevation(el)) << " peak/mean " << fmt(map.peak_to_mean()) << '\n';
    } else if (*layers) {
      sh::set_thread_count(layer_args.threads);
      const auto foa = read_foa(layers_in, layer_args.in_convention);
      const auto opts = layer_args.options(1);
      const auto blocks = sh::plan_blocks(foa.length(), opts.block_length, opts.crossfade);
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto dec = sh::decompose(sh::extract_block(foa, blocks[b]), opts);
        std::string prefix = layers_prefix;
        if (blocks.size() > 1) prefix += "_block" + std::to_string(b);
        for (const auto& p : sh::write_layer_csv(dec.representation, dec.dictionary, prefix))
          std::cout << p.string() << '\n';
      }
    }
  } catch (const sh::DivergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const sh::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sh::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
