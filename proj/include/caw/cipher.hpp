#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "caw/audio_io.hpp"
#include "caw/error.hpp"
#include "caw/keying.hpp"
#include "caw/lifting.hpp"

namespace caw {

/// How keystream bytes and subbands are combined.
///
/// The defaults subtract the byte midpoint from the keystream and mix on
/// orthonormally scaled subbands (approx * gain, detail / gain). Without
/// both, ciphertext keeps a DC offset and an alternating pattern from the
/// inverse transform that show up in its spectrum and lag-1 correlation.
/// `paper_literal()` mixes raw bytes into unscaled subbands.
struct CipherOptions {
  double keystream_offset = 127.5;
  double subband_gain = std::numbers::sqrt2;

  static CipherOptions paper_literal() { return {0.0, 1.0}; }
};

/// Hyperbolic mixing at t = theta / l.
///
/// apply:  c' = c (cosh t - sinh t) + f (cosh t + sinh t)
/// invert: c  = c' (cosh t + sinh t) - f (cosh t + sinh t)^2
/// Since (cosh t - sinh t)(cosh t + sinh t) = 1 the pair are inverses.
class HyperbolicMix {
 public:
  explicit HyperbolicMix(double t) : down_(std::cosh(t) - std::sinh(t)), up_(std::cosh(t) + std::sinh(t)) {}

  double apply(double coeff, double key) const { return coeff * down_ + key * up_; }
  double invert(double mixed, double key) const { return mixed * up_ - key * up_ * up_; }

 private:
  double down_;
  double up_;
};

/// theta / l, checked against the operating interval (0, pi/4].
inline double mixing_parameter(const KeyMaterial& key, std::size_t l) {
  const double t = key.theta / static_cast<double>(l);
  if (!(t > 0.0 && t <= std::numbers::pi / 4)) {
    throw Error(Errc::out_of_range, "theta / l = " + std::to_string(t) + " outside (0, pi/4] for l = " +
                                        std::to_string(l));
  }
  return t;
}

namespace detail {

enum class MixDirection { encrypt, decrypt };

inline void mix_subbands(SubbandPair& bands, const Keystream& ks, double t, const CipherOptions& opts,
                         MixDirection dir) {
  const HyperbolicMix mix(t);
  const std::size_t half = bands.approx.size();
  const double g = opts.subband_gain;
  for (std::size_t i = 0; i < half; ++i) {
    const double k1 = static_cast<double>(ks.f1[i]) - opts.keystream_offset;
    // F2 is one byte short when l is odd; the missing byte is zero.
    const double k2 = (i < ks.f2.size() ? static_cast<double>(ks.f2[i]) : 0.0) - opts.keystream_offset;
    const double a = bands.approx[i] * g;
    const double d = bands.detail[i] / g;
    if (dir == MixDirection::encrypt) {
      bands.approx[i] = mix.apply(a, k1) / g;
      bands.detail[i] = mix.apply(d, k2) * g;
    } else {
      bands.approx[i] = mix.invert(a, k1) / g;
      bands.detail[i] = mix.invert(d, k2) * g;
    }
  }
}

}  // namespace detail

/// Encrypt the first original_len samples of `audio`.
///
/// The ciphertext has even length: an odd-length message gains one sample
/// from lifting padding, and that sample is needed for decryption.
inline AudioBuffer encrypt(const AudioBuffer& audio, const KeyMaterial& key,
                           const CipherOptions& opts = {}) {
  validate(audio);
  validate_key(key);
  const std::size_t l = audio.original_len;
  if (l < 2) throw Error(Errc::invalid_argument, "need at least two samples to encrypt");
  const double t = mixing_parameter(key, l);

  SubbandPair bands = forward_lwt(std::span(audio.samples).first(l));
  const Keystream ks = derive_keystream(key, l);
  detail::mix_subbands(bands, ks, t, opts, detail::MixDirection::encrypt);
  bands.original_len = 2 * bands.approx.size();

  AudioBuffer out;
  out.samples = inverse_lwt(bands);
  out.sample_rate = audio.sample_rate;
  out.channels = audio.channels;
  out.original_len = l;
  return out;
}

inline AudioBuffer decrypt(const AudioBuffer& ciphertext, const KeyMaterial& key,
                           const CipherOptions& opts = {}) {
  validate(ciphertext);
  validate_key(key);
  const std::size_t l = ciphertext.original_len;
  if (l < 2) throw Error(Errc::invalid_argument, "ciphertext too short");
  const std::size_t half = (l + 1) / 2;
  if (ciphertext.samples.size() != 2 * half) {
    throw Error(Errc::length_mismatch, "ciphertext holds " + std::to_string(ciphertext.samples.size()) +
                                           " samples, expected " + std::to_string(2 * half));
  }
  const double t = mixing_parameter(key, l);

  SubbandPair bands = forward_lwt(ciphertext.samples);
  const Keystream ks = derive_keystream(key, l);
  detail::mix_subbands(bands, ks, t, opts, detail::MixDirection::decrypt);
  bands.original_len = l;
  bands.padded = l % 2 != 0;

  return make_buffer(inverse_lwt(bands), ciphertext.sample_rate, ciphertext.channels);
}

}  // namespace caw
