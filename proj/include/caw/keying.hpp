#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "caw/chaos.hpp"
#include "caw/error.hpp"

namespace caw {

/// The complete secret: map parameters and initial condition, mixing angle
/// theta (applied as theta / l), rotation angle phi, and key-matrix order r.
struct KeyMaterial {
  HenonParams henon;
  double theta = 100.0;
  double phi = std::numbers::pi / 4;
  int r = 4;
};

/// Circulant byte matrix; row j is row 0 rotated left by j.
class KeyMatrix {
 public:
  KeyMatrix(std::vector<std::uint8_t> first_row) : order_(first_row.size()), cells_(order_ * order_) {
    for (std::size_t j = 0; j < order_; ++j) {
      for (std::size_t c = 0; c < order_; ++c) {
        cells_[j * order_ + c] = first_row[(j + c) % order_];
      }
    }
  }

  std::size_t order() const { return order_; }
  std::uint8_t at(std::size_t row, std::size_t col) const { return cells_[row * order_ + col]; }
  std::span<const std::uint8_t> row_major() const { return cells_; }

 private:
  std::size_t order_;
  std::vector<std::uint8_t> cells_;
};

struct KeystreamHalves {
  std::vector<std::uint8_t> first;   // Y_k1, ceil(l/2) bytes
  std::vector<std::uint8_t> second;  // Y_k2, floor(l/2) bytes
};

/// Key-hidden keystream consumed by the cipher.
struct Keystream {
  std::vector<std::uint8_t> f1;
  std::vector<std::uint8_t> f2;
  std::size_t pad_count = 0;  // zero bytes appended to reach a multiple of r*r
};

inline constexpr double kKeystreamScale = 1e9;
inline constexpr double kKeyMatrixScale = 1e16;

/// floor(|v| * 1e9) mod 256.
inline std::uint8_t keystream_byte(double v) {
  return static_cast<std::uint8_t>(std::fmod(std::floor(std::fabs(v) * kKeystreamScale), 256.0));
}

inline void validate_key(const KeyMaterial& key) {
  detail::require_finite_params(key.henon);
  if (!(key.henon.alpha > 0.0) || !(key.henon.beta > 0.0)) {
    throw Error(Errc::out_of_range, "alpha and beta must be positive");
  }
  if (!std::isfinite(key.theta) || !(key.theta > 0.0)) {
    throw Error(Errc::out_of_range, "theta must be positive and finite");
  }
  if (!(key.phi >= 0.0 && key.phi <= std::numbers::pi / 2)) {
    throw Error(Errc::out_of_range, "phi must lie in [0, pi/2]");
  }
  if (key.r < 2) {
    throw Error(Errc::out_of_range, "key matrix order r must be at least 2");
  }
}

// Rotates consecutive orbit pairs by phi / i; i runs 1..l over both halves.
// Orbit index k (1-based) reads orbit.xs[k - 1].
inline KeystreamHalves generate_keystream(const Orbit& orbit, std::size_t l, double phi) {
  if (l < 2) throw Error(Errc::invalid_argument, "keystream length must be at least 2");
  if (!(phi >= 0.0 && phi <= std::numbers::pi / 2)) {
    throw Error(Errc::out_of_range, "phi must lie in [0, pi/2]");
  }
  if (orbit.xs.size() < l + 1) {
    throw Error(Errc::invalid_argument, "orbit shorter than l + 1");
  }

  const auto c = [&](std::size_t k) { return orbit.xs[k - 1]; };
  const std::size_t half = (l + 1) / 2;
  KeystreamHalves out;
  out.first.reserve(half);
  out.second.reserve(l - half);
  for (std::size_t k = 1; k <= half; ++k) {
    const double a = phi / static_cast<double>(k);
    out.first.push_back(keystream_byte(std::cos(a) * c(k) + std::sin(a) * c(k + 1)));
  }
  for (std::size_t i = half + 1; i <= l; ++i) {
    const double a = phi / static_cast<double>(i);
    out.second.push_back(keystream_byte(std::sin(a) * c(i) - std::cos(a) * c(i + 1)));
  }
  return out;
}

// m_i = floor(s_i * 1e16) mod 256 with s_i = (x_i + l) / (2^16 + l).
inline KeyMatrix derive_key_matrix(const Orbit& orbit, int r, std::size_t l) {
  if (r < 2) throw Error(Errc::out_of_range, "key matrix order r must be at least 2");
  if (l < 1) throw Error(Errc::invalid_argument, "signal length must be positive");
  const auto order = static_cast<std::size_t>(r);
  if (orbit.xs.size() < order) throw Error(Errc::invalid_argument, "orbit shorter than r");

  const double len = static_cast<double>(l);
  std::vector<std::uint8_t> row(order);
  for (std::size_t i = 0; i < order; ++i) {
    const double s = (orbit.xs[i] + len) / (65536.0 + len);
    row[i] = static_cast<std::uint8_t>(std::fmod(std::floor(std::fabs(s) * kKeyMatrixScale), 256.0));
  }
  return KeyMatrix(std::move(row));
}

/// Tile [first, second] into r x r blocks (zero-padded), XOR each block
/// with the key matrix, and split back. Applying it twice is the identity.
inline Keystream hide_key(std::span<const std::uint8_t> first, std::span<const std::uint8_t> second,
                          const KeyMatrix& m) {
  const std::size_t block = m.order() * m.order();
  std::vector<std::uint8_t> joined(first.begin(), first.end());
  joined.insert(joined.end(), second.begin(), second.end());
  const std::size_t used = joined.size();
  const std::size_t pad = (block - used % block) % block;
  joined.resize(used + pad, 0);

  const auto cells = m.row_major();
  for (std::size_t i = 0; i < joined.size(); ++i) joined[i] ^= cells[i % block];

  Keystream ks;
  ks.pad_count = pad;
  ks.f1.assign(joined.begin(), joined.begin() + static_cast<std::ptrdiff_t>(first.size()));
  ks.f2.assign(joined.begin() + static_cast<std::ptrdiff_t>(first.size()),
               joined.begin() + static_cast<std::ptrdiff_t>(used));
  return ks;
}

/// Full keystream for a message of l samples: orbit, Y_k1/Y_k2, key matrix, hiding.
inline Keystream derive_keystream(const KeyMaterial& key, std::size_t l) {
  validate_key(key);
  const Orbit orbit = iterate_henon(key.henon, l + 1, kDefaultBurnIn);
  const KeystreamHalves halves = generate_keystream(orbit, l, key.phi);
  const KeyMatrix m = derive_key_matrix(orbit, key.r, l);
  return hide_key(halves.first, halves.second, m);
}

// Key file: key=value lines, reals in %.16e (17 significant digits) so they parse
// back to the identical double.

namespace detail {

inline std::string exact_decimal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

inline double parse_real(std::string_view field, std::string_view text) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw Error(Errc::malformed, "key field '" + std::string(field) + "' is not a number");
  }
  return v;
}

}  // namespace detail

inline std::string format_key_file(const KeyMaterial& key) {
  std::ostringstream out;
  out << "version=1\n"
      << "variant=" << to_string(key.henon.variant) << '\n'
      << "alpha=" << detail::exact_decimal(key.henon.alpha) << '\n'
      << "beta=" << detail::exact_decimal(key.henon.beta) << '\n'
      << "x0=" << detail::exact_decimal(key.henon.x0) << '\n'
      << "y0=" << detail::exact_decimal(key.henon.y0) << '\n'
      << "theta=" << detail::exact_decimal(key.theta) << '\n'
      << "phi=" << detail::exact_decimal(key.phi) << '\n'
      << "r=" << key.r << '\n';
  return out.str();
}

inline KeyMaterial parse_key_file(std::string_view text) {
  std::map<std::string, std::string, std::less<>> fields;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::malformed, "key file line without '='");
    }
    std::string name(line.substr(0, eq));
    if (!fields.emplace(name, std::string(line.substr(eq + 1))).second) {
      throw Error(Errc::malformed, "duplicate key field '" + name + "'");
    }
  }

  static constexpr std::string_view required[] = {"version", "variant", "alpha", "beta", "x0",
                                                  "y0",      "theta",   "phi",   "r"};
  for (auto name : required) {
    if (!fields.contains(name)) throw Error(Errc::malformed, "key file lacks '" + std::string(name) + "'");
  }
  if (fields.size() != std::size(required)) {
    throw Error(Errc::malformed, "key file has unknown fields");
  }
  if (fields["version"] != "1") {
    throw Error(Errc::unsupported_format, "unsupported key file version");
  }

  KeyMaterial key;
  key.henon.variant = parse_variant(fields["variant"]);
  key.henon.alpha = detail::parse_real("alpha", fields["alpha"]);
  key.henon.beta = detail::parse_real("beta", fields["beta"]);
  key.henon.x0 = detail::parse_real("x0", fields["x0"]);
  key.henon.y0 = detail::parse_real("y0", fields["y0"]);
  key.theta = detail::parse_real("theta", fields["theta"]);
  key.phi = detail::parse_real("phi", fields["phi"]);

  const std::string& r_text = fields["r"];
  int r = 0;
  const auto [end, ec] = std::from_chars(r_text.data(), r_text.data() + r_text.size(), r);
  if (ec != std::errc{} || end != r_text.data() + r_text.size()) {
    throw Error(Errc::malformed, "key field 'r' is not an integer");
  }
  key.r = r;
  validate_key(key);
  return key;
}

inline KeyMaterial read_key_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open key file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_key_file(text.str());
}

inline void write_key_file(const KeyMaterial& key, const std::filesystem::path& path) {
  validate_key(key);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot open " + path.string() + " for writing");
  out << format_key_file(key);
  out.flush();
  if (!out) throw Error(Errc::io, "write failed: " + path.string());
}

}  // namespace caw
