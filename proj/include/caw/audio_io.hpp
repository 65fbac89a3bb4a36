#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "caw/error.hpp"

namespace caw {

/// Interleaved sample carrier for both plaintext and ciphertext.
///
/// Plaintext decoded from PCM16 lies in [-1, 1]; ciphertext is unbounded.
/// `original_len` is the sample count before any padding added by the
/// lifting transform, so `samples.size() >= original_len`.
struct AudioBuffer {
  std::vector<double> samples;
  std::uint32_t sample_rate = 0;
  std::uint16_t channels = 1;
  std::size_t original_len = 0;

  std::size_t pad_count() const { return samples.size() - original_len; }
  std::size_t frames() const { return samples.size() / channels; }
};

enum class SampleFormat { pcm16, float64 };

inline constexpr std::uint16_t kWavFormatPcm = 1;
inline constexpr std::uint16_t kWavFormatFloat = 3;
inline constexpr std::uint8_t kCawChunkVersion = 1;
inline constexpr double kPcm16Scale = 32768.0;

inline AudioBuffer make_buffer(std::vector<double> samples,
                               std::uint32_t sample_rate,
                               std::uint16_t channels = 1) {
  AudioBuffer buf;
  buf.original_len = samples.size();
  buf.samples = std::move(samples);
  buf.sample_rate = sample_rate;
  buf.channels = channels;
  return buf;
}

inline void validate(const AudioBuffer& buf) {
  if (buf.sample_rate == 0) {
    throw Error(Errc::invalid_argument, "sample rate must be positive");
  }
  if (buf.channels == 0) {
    throw Error(Errc::invalid_argument, "channel count must be at least 1");
  }
  if (buf.original_len > buf.samples.size()) {
    throw Error(Errc::invalid_argument,
                "original length exceeds stored sample count");
  }
}

/// round(v * 32768) clamped to the int16 range. Throws for samples further
/// than one quantum outside [-1, 1].
inline std::int16_t quantize_pcm16(double v) {
  if (!std::isfinite(v)) {
    throw Error(Errc::non_finite, "non-finite sample");
  }
  constexpr double tol = 1.0 / kPcm16Scale;
  if (v < -1.0 - tol || v > 1.0 + tol) {
    throw Error(Errc::out_of_range,
                "sample " + std::to_string(v) + " outside [-1, 1] for pcm16");
  }
  const double code = std::clamp(std::round(v * kPcm16Scale), -32768.0, 32767.0);
  return static_cast<std::int16_t>(code);
}

inline std::vector<std::vector<double>> deinterleave(std::span<const double> samples,
                                                     std::size_t channels) {
  if (channels == 0 || samples.size() % channels != 0) {
    throw Error(Errc::invalid_argument,
                "sample count is not a multiple of the channel count");
  }
  std::vector<std::vector<double>> out(channels);
  const std::size_t frames = samples.size() / channels;
  for (auto& lane : out) lane.reserve(frames);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out[i % channels].push_back(samples[i]);
  }
  return out;
}

inline std::vector<double> interleave(const std::vector<std::vector<double>>& lanes) {
  if (lanes.empty()) {
    throw Error(Errc::invalid_argument, "need at least one channel");
  }
  const std::size_t frames = lanes.front().size();
  for (const auto& lane : lanes) {
    if (lane.size() != frames) {
      throw Error(Errc::length_mismatch, "channels differ in length");
    }
  }
  std::vector<double> out;
  out.reserve(frames * lanes.size());
  for (std::size_t f = 0; f < frames; ++f) {
    for (const auto& lane : lanes) out.push_back(lane[f]);
  }
  return out;
}

namespace detail {

class ByteWriter {
 public:
  void bytes(std::string_view s) { buf_.insert(buf_.end(), s.begin(), s.end()); }
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u16(std::uint16_t v) { le(v, 2); }
  void u32(std::uint32_t v) { le(v, 4); }
  void u64(std::uint64_t v) { le(v, 8); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void patch_u32(std::size_t at, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
  }
  std::size_t size() const { return buf_.size(); }
  const std::vector<std::uint8_t>& data() const { return buf_; }

 private:
  void le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> buf_;
};

inline std::uint64_t read_le(std::span<const std::uint8_t> bytes, std::size_t at, int n) {
  std::uint64_t v = 0;
  for (int i = 0; i < n; ++i) v |= std::uint64_t{bytes[at + i]} << (8 * i);
  return v;
}

inline std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io, "cannot open " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(Errc::io, "read failed: " + path.string());
  }
  return bytes;
}

inline void spill(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(Errc::io, "cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) {
    throw Error(Errc::io, "write failed: " + path.string());
  }
}

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
};

struct CawChunk {
  std::uint64_t original_len = 0;
  std::uint32_t pad_count = 0;
};

}  // namespace detail

/// Decode a RIFF/WAVE byte image. PCM16 maps to v/32768, float64 is taken
/// bit-for-bit. A `caw1` chunk, when present, supplies original_len.
inline AudioBuffer decode_wav(std::span<const std::uint8_t> bytes) {
  using detail::read_le;
  if (bytes.size() < 12 || std::string_view(reinterpret_cast<const char*>(bytes.data()), 4) != "RIFF" ||
      std::string_view(reinterpret_cast<const char*>(bytes.data()) + 8, 4) != "WAVE") {
    throw Error(Errc::malformed, "not a RIFF/WAVE file");
  }

  std::optional<detail::FmtChunk> fmt;
  std::optional<std::span<const std::uint8_t>> data;
  std::optional<detail::CawChunk> caw;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string_view id(reinterpret_cast<const char*>(bytes.data()) + pos, 4);
    const std::uint64_t size = read_le(bytes, pos + 4, 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) {
      throw Error(Errc::malformed, "chunk '" + std::string(id) + "' overruns the file");
    }
    const auto chunk = bytes.subspan(body, size);
    if (id == "fmt ") {
      if (size < 16) throw Error(Errc::malformed, "fmt chunk too short");
      detail::FmtChunk f;
      f.format = static_cast<std::uint16_t>(read_le(chunk, 0, 2));
      f.channels = static_cast<std::uint16_t>(read_le(chunk, 2, 2));
      f.sample_rate = static_cast<std::uint32_t>(read_le(chunk, 4, 4));
      f.bits = static_cast<std::uint16_t>(read_le(chunk, 14, 2));
      fmt = f;
    } else if (id == "data") {
      data = chunk;
    } else if (id == "caw1") {
      if (size < 13) throw Error(Errc::malformed, "caw1 chunk too short");
      if (chunk[0] != kCawChunkVersion) {
        throw Error(Errc::unsupported_format,
                    "caw1 chunk version " + std::to_string(chunk[0]));
      }
      caw = detail::CawChunk{read_le(chunk, 1, 8),
                             static_cast<std::uint32_t>(read_le(chunk, 9, 4))};
    }
    pos = body + size + (size & 1);
  }

  if (!fmt) throw Error(Errc::malformed, "missing fmt chunk");
  if (!data) throw Error(Errc::malformed, "missing data chunk");

  const bool pcm16 = fmt->format == kWavFormatPcm && fmt->bits == 16;
  const bool float64 = fmt->format == kWavFormatFloat && fmt->bits == 64;
  if (!pcm16 && !float64) {
    throw Error(Errc::unsupported_format,
                "unsupported WAV format code " + std::to_string(fmt->format) +
                    " with " + std::to_string(fmt->bits) + "-bit samples");
  }
  if (fmt->channels == 0) throw Error(Errc::malformed, "zero channels");
  if (fmt->sample_rate == 0) throw Error(Errc::malformed, "zero sample rate");
  if (data->empty()) throw Error(Errc::empty_data, "data chunk is empty");

  const std::size_t width = pcm16 ? 2 : 8;
  if (data->size() % width != 0) {
    throw Error(Errc::malformed, "data chunk is not a whole number of samples");
  }

  AudioBuffer buf;
  buf.sample_rate = fmt->sample_rate;
  buf.channels = fmt->channels;
  const std::size_t count = data->size() / width;
  buf.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t raw = read_le(*data, i * width, static_cast<int>(width));
    buf.samples[i] = pcm16
                         ? static_cast<std::int16_t>(static_cast<std::uint16_t>(raw)) / kPcm16Scale
                         : std::bit_cast<double>(raw);
  }

  buf.original_len = count;
  if (caw) {
    if (caw->original_len + caw->pad_count != count) {
      throw Error(Errc::malformed, "caw1 lengths disagree with the data chunk");
    }
    buf.original_len = static_cast<std::size_t>(caw->original_len);
  }
  return buf;
}

inline std::vector<std::uint8_t> encode_wav(const AudioBuffer& buf, SampleFormat mode) {
  validate(buf);
  for (double v : buf.samples) {
    if (!std::isfinite(v)) throw Error(Errc::non_finite, "buffer contains a non-finite sample");
  }

  const bool pcm16 = mode == SampleFormat::pcm16;
  const std::uint16_t width = pcm16 ? 2 : 8;
  const std::uint64_t data_bytes = std::uint64_t{width} * buf.samples.size();
  if (data_bytes > 0xFFFFFFF0u) {
    throw Error(Errc::out_of_range, "too many samples for a RIFF file");
  }

  detail::ByteWriter w;
  w.bytes("RIFF");
  w.u32(0);  // patched below
  w.bytes("WAVE");

  w.bytes("fmt ");
  w.u32(pcm16 ? 16 : 18);
  w.u16(pcm16 ? kWavFormatPcm : kWavFormatFloat);
  w.u16(buf.channels);
  w.u32(buf.sample_rate);
  w.u32(buf.sample_rate * buf.channels * width);
  w.u16(static_cast<std::uint16_t>(buf.channels * width));
  w.u16(static_cast<std::uint16_t>(width * 8));
  if (!pcm16) {
    w.u16(0);  // cbSize
    w.bytes("fact");
    w.u32(4);
    w.u32(static_cast<std::uint32_t>(buf.frames()));
  }

  w.bytes("data");
  w.u32(static_cast<std::uint32_t>(data_bytes));
  for (double v : buf.samples) {
    if (pcm16) {
      w.u16(static_cast<std::uint16_t>(quantize_pcm16(v)));
    } else {
      w.f64(v);
    }
  }

  if (!pcm16) {
    w.bytes("caw1");
    w.u32(13);
    w.u8(kCawChunkVersion);
    w.u64(buf.original_len);
    w.u32(static_cast<std::uint32_t>(buf.pad_count()));
    w.u8(0);  // RIFF word alignment
  }

  w.patch_u32(4, static_cast<std::uint32_t>(w.size() - 8));
  return w.data();
}

inline AudioBuffer read_wav(const std::filesystem::path& path) {
  const auto bytes = detail::slurp(path);
  return decode_wav(bytes);
}

inline void write_wav(const AudioBuffer& buf, const std::filesystem::path& path,
                      SampleFormat mode) {
  detail::spill(path, encode_wav(buf, mode));
}

}  // namespace caw
