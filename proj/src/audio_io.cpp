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

#include "sparsehoa/audio_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>

#include "sparsehoa/error.hpp"

namespace sparsehoa {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

struct FormatChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

FormatChunk parse_fmt(const unsigned char* p, std::uint32_t size, const std::string& where) {
  if (size < 16) throw ParseError(where + ": fmt chunk shorter than 16 bytes");
  FormatChunk fmt;
  fmt.format = read_u16(p);
  fmt.channels = read_u16(p + 2);
  fmt.sample_rate = read_u32(p + 4);
  fmt.block_align = read_u16(p + 12);
  fmt.bits = read_u16(p + 14);
  if (fmt.format == kFormatExtensible) {
    if (size < 40) throw ParseError(where + ": fmt chunk too short for WAVE_FORMAT_EXTENSIBLE");
    // The sub-format GUID starts with the plain format code.
    fmt.format = read_u16(p + 24);
  }
  if (fmt.channels == 0) throw ParseError(where + ": fmt chunk declares zero channels");
  if (fmt.sample_rate == 0) throw ParseError(where + ": fmt chunk declares zero sample rate");
  return fmt;
}

}  // namespace

MultichannelSignal read_wav(const std::filesystem::path& path) {
  const std::string where = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(where + ": cannot open for reading");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t total = bytes.size();

  if (total < 12 || std::memcmp(data, "RIFF", 4) != 0)
    throw ParseError(where + ": missing RIFF header");
  if (std::memcmp(data + 8, "WAVE", 4) != 0) throw ParseError(where + ": RIFF form is not WAVE");

  std::optional<FormatChunk> fmt;
  const unsigned char* samples = nullptr;
  std::uint32_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= total) {
    const std::string id(reinterpret_cast<const char*>(data + pos), 4);
    const std::uint32_t size = read_u32(data + pos + 4);
    const std::size_t body = pos + 8;
    if (id == "fmt ") {
      if (body + size > total) throw ParseError(where + ": truncated fmt chunk");
      fmt = parse_fmt(data + body, size, where);
    } else if (id == "data") {
      if (body + size > total)
        throw ParseError(where + ": truncated data chunk (declares " + std::to_string(size) +
                         " bytes, " + std::to_string(total - body) + " present)");
      samples = data + body;
      data_size = size;
      break;
    }
    pos = body + size + (size & 1u);
  }
  if (!fmt) throw ParseError(where + ": missing fmt chunk");
  if (!samples) throw ParseError(where + ": missing data chunk");

  const bool is_float = fmt->format == kFormatFloat && fmt->bits == 32;
  const bool is_pcm = fmt->format == kFormatPcm && (fmt->bits == 16 || fmt->bits == 24);
  if (!is_float && !is_pcm)
    throw UnsupportedFormatError(where + ": unsupported sample format (code " +
                                 std::to_string(fmt->format) + ", " + std::to_string(fmt->bits) +
                                 " bits)");
  const std::size_t bytes_per_sample = fmt->bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * fmt->channels;
  if (fmt->block_align != frame_bytes)
    throw ParseError(where + ": fmt chunk block align " + std::to_string(fmt->block_align) +
                     " does not match " + std::to_string(frame_bytes));
  if (data_size % frame_bytes != 0)
    throw ParseError(where + ": data chunk size is not a whole number of frames");

  const std::size_t frames = data_size / frame_bytes;
  std::vector<std::vector<double>> channels(fmt->channels, std::vector<double>(frames));
  const double pcm_scale = 1.0 / static_cast<double>(1u << (fmt->bits - 1));
  for (std::size_t n = 0; n < frames; ++n) {
    for (std::size_t c = 0; c < fmt->channels; ++c) {
      const unsigned char* s = samples + n * frame_bytes + c * bytes_per_sample;
      double v = 0.0;
      if (is_float) {
        v = std::bit_cast<float>(read_u32(s));
      } else if (fmt->bits == 16) {
        v = static_cast<std::int16_t>(read_u16(s)) * pcm_scale;
      } else {
        std::int32_t raw = s[0] | (s[1] << 8) | (s[2] << 16);
        if (raw & 0x800000) raw -= 0x1000000;
        v = raw * pcm_scale;
      }
      channels[c][n] = v;
    }
  }
  return MultichannelSignal(std::move(channels), static_cast<int>(fmt->sample_rate));
}

void write_wav(const MultichannelSignal& signal, const std::filesystem::path& path) {
  const std::string where = path.string();
  const std::size_t channels = signal.channel_count();
  if (channels == 0 || channels > 65535)
    throw DimensionError(where + ": channel count must be in [1, 65535]");
  if (!signal.all_finite()) throw ValidationError(where + ": refusing to write non-finite samples");
  const std::size_t frames = signal.length();
  const std::uint64_t data_bytes = static_cast<std::uint64_t>(frames) * channels * 4;
  if (data_bytes + 36 > 0xFFFFFFFFull) throw DimensionError(where + ": too large for RIFF/WAVE");

  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  put_u32(out, static_cast<std::uint32_t>(36 + data_bytes));
  out += "WAVE";
  out += "fmt ";
  put_u32(out, 16);
  put_u16(out, kFormatFloat);
  put_u16(out, static_cast<std::uint16_t>(channels));
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate()));
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate() * channels * 4));
  put_u16(out, static_cast<std::uint16_t>(channels * 4));
  put_u16(out, 32);
  out += "data";
  put_u32(out, static_cast<std::uint32_t>(data_bytes));
  for (std::size_t n = 0; n < frames; ++n)
    for (std::size_t c = 0; c < channels; ++c)
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(signal.channel(c)[n])));

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(where + ": cannot open for writing");
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError(where + ": write failed");
}

AmbisonicConvention parse_convention(std::string_view name) {
  if (name == "ambix") return AmbisonicConvention::AmbixSn3d;
  if (name == "fuma") return AmbisonicConvention::PaperBFormat;
  throw ValidationError("unknown ambisonic convention '" + std::string(name) + "'");
}

MultichannelSignal convert_convention(const MultichannelSignal& signal, AmbisonicConvention from,
                                      AmbisonicConvention to) {
  if (signal.channel_count() != 4)
    throw DimensionError("first-order conversion needs 4 channels, got " +
                         std::to_string(signal.channel_count()));
  if (from == to) return signal;
  const auto& ch = signal.channels();
  auto scaled = [](const std::vector<double>& v, double g) {
    std::vector<double> out(v);
    for (double& s : out) s *= g;
    return out;
  };
  if (from == AmbisonicConvention::PaperBFormat) {
    // (W, X, Y, Z) -> (sqrt2 W, Y, Z, X)
    return MultichannelSignal({scaled(ch[0], std::sqrt(2.0)), ch[2], ch[3], ch[1]},
                              signal.sample_rate());
  }
  // (W, Y, Z, X) -> (W / sqrt2, X, Y, Z)
  return MultichannelSignal({scaled(ch[0], 1.0 / std::sqrt(2.0)), ch[3], ch[1], ch[2]},
                            signal.sample_rate());
}

}  // namespace sparsehoa
