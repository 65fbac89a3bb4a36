#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "caw/audio_io.hpp"
#include "caw/cipher.hpp"
#include "caw/error.hpp"
#include "caw/fft.hpp"
#include "caw/keying.hpp"

namespace caw {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr std::size_t kDefaultEntropyWindow = 1024;
inline constexpr std::size_t kDefaultEntropyHop = 512;

/// Pearson correlation with population moments. Throws
/// Errc::undefined_correlation when either series is constant.
inline double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(Errc::length_mismatch, "correlation needs equal-length series");
  if (x.size() < 2) throw Error(Errc::invalid_argument, "correlation needs at least two pairs");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(Errc::undefined_correlation, "correlation undefined for a constant series");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// Lag-1 correlation between s[0..n-2] and s[1..n-1].
inline double adjacent_correlation(std::span<const double> samples) {
  if (samples.size() < 3) throw Error(Errc::invalid_argument, "adjacent correlation needs at least 3 samples");
  return pearson(samples.first(samples.size() - 1), samples.subspan(1));
}

struct SpectrumBin {
  double frequency = 0.0;
  double power = 0.0;
};

// One-sided periodogram scaled by 1/(fs n); sum(power) * fs / n equals the
// signal's mean square.
inline std::vector<SpectrumBin> power_spectrum(std::span<const double> samples, double sample_rate) {
  if (samples.size() < 2) throw Error(Errc::invalid_argument, "power spectrum needs at least 2 samples");
  if (!(sample_rate > 0.0)) throw Error(Errc::invalid_argument, "sample rate must be positive");
  const std::size_t n = samples.size();
  const auto spectrum = fft::dft(samples);
  const double nd = static_cast<double>(n);
  const double scale = 1.0 / (sample_rate * nd);

  std::vector<SpectrumBin> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const bool unpaired = k == 0 || (n % 2 == 0 && k == n / 2);
    out[k].frequency = static_cast<double>(k) * sample_rate / nd;
    out[k].power = std::norm(spectrum[k]) * scale * (unpaired ? 1.0 : 2.0);
  }
  return out;
}

struct SpectralEntropy {
  std::vector<double> series;           // one value per non-silent window, in [0, 1]
  std::vector<std::size_t> window_starts;  // sample offset of each series entry
  std::vector<std::size_t> skipped;     // offsets of all-zero windows
  double mean = std::numeric_limits<double>::quiet_NaN();
};

/// Normalized Shannon entropy of one window's power spectrum.
///
/// The |X_k|^2 for k = 0..w/2 are scaled to sum to one and the entropy is
/// divided by ln(w/2 + 1). Returns nullopt for an all-zero window.
inline std::optional<double> window_entropy(std::span<const double> window) {
  const auto spectrum = fft::dft(window);
  const std::size_t bins = window.size() / 2 + 1;
  std::vector<double> power(bins);
  double total = 0.0;
  for (std::size_t k = 0; k < bins; ++k) {
    power[k] = std::norm(spectrum[k]);
    total += power[k];
  }
  if (!(total > 0.0)) return std::nullopt;
  double h = 0.0;
  for (double p : power) {
    const double q = p / total;
    if (q > 0.0) h -= q * std::log(q);
  }
  return std::clamp(h / std::log(static_cast<double>(bins)), 0.0, 1.0);
}

inline SpectralEntropy spectral_entropy(std::span<const double> samples,
                                        std::size_t window_len = kDefaultEntropyWindow,
                                        std::size_t hop = kDefaultEntropyHop) {
  if (window_len < 8) throw Error(Errc::invalid_argument, "entropy window must be at least 8 samples");
  if (hop < 1) throw Error(Errc::invalid_argument, "entropy hop must be positive");
  if (samples.size() < window_len) {
    throw Error(Errc::invalid_argument, "signal shorter than the entropy window");
  }

  SpectralEntropy out;
  double sum = 0.0;
  for (std::size_t start = 0; start + window_len <= samples.size(); start += hop) {
    const auto e = window_entropy(samples.subspan(start, window_len));
    if (!e) {
      out.skipped.push_back(start);
      continue;
    }
    out.series.push_back(*e);
    out.window_starts.push_back(start);
    sum += *e;
  }
  if (!out.series.empty()) out.mean = sum / static_cast<double>(out.series.size());
  return out;
}

/// log10 of N0^2 * 10^64 * (2^8)^4, computed in the log domain.
inline double key_space_log10(double n0) {
  if (!(n0 >= 1.0)) throw Error(Errc::invalid_argument, "N0 must be at least 1");
  return 2.0 * std::log10(n0) + 64.0 + 32.0 * std::log10(2.0);
}

// --- key sensitivity ------------------------------------------------------

enum class KeyField { x0, y0, alpha, beta, theta, phi, r };

struct KeyPerturbation {
  KeyField field = KeyField::x0;
  double delta = 0.0;  // added to the field; rounded for r

  std::string label() const {
    static constexpr const char* names[] = {"x0", "y0", "alpha", "beta", "theta", "phi", "r"};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%+.3g", names[static_cast<int>(field)], delta);
    return buf;
  }
};

inline KeyMaterial perturb(KeyMaterial key, const KeyPerturbation& p) {
  switch (p.field) {
    case KeyField::x0: key.henon.x0 += p.delta; break;
    case KeyField::y0: key.henon.y0 += p.delta; break;
    case KeyField::alpha: key.henon.alpha += p.delta; break;
    case KeyField::beta: key.henon.beta += p.delta; break;
    case KeyField::theta: key.theta += p.delta; break;
    case KeyField::phi: key.phi += p.delta; break;
    case KeyField::r: key.r += static_cast<int>(std::lround(p.delta)); break;
  }
  return key;
}

struct SensitivityEntry {
  std::string label;
  std::optional<double> correlation;  // decrypted vs. plaintext; nullopt if undefined
  double max_abs_error = 0.0;
};

/// Encrypt once, decrypt with the exact key and with each perturbed key,
/// and correlate every decryption against the plaintext. Entry 0 is the
/// exact-key baseline.
inline std::vector<SensitivityEntry> key_sensitivity_report(const AudioBuffer& audio, const KeyMaterial& key,
                                                            std::span<const KeyPerturbation> perturbations,
                                                            const CipherOptions& opts = {}) {
  const AudioBuffer ciphertext = encrypt(audio, key, opts);
  const auto plain = std::span(audio.samples).first(audio.original_len);

  const auto score = [&](std::string label, const KeyMaterial& k) {
    const AudioBuffer out = decrypt(ciphertext, k, opts);
    SensitivityEntry e{std::move(label), std::nullopt, 0.0};
    for (std::size_t i = 0; i < plain.size(); ++i) {
      e.max_abs_error = std::max(e.max_abs_error, std::fabs(out.samples[i] - plain[i]));
    }
    try {
      e.correlation = pearson(out.samples, plain);
    } catch (const Error& err) {
      if (err.code() != Errc::undefined_correlation) throw;
    }
    return e;
  };

  std::vector<SensitivityEntry> entries;
  entries.push_back(score("exact", key));
  for (const auto& p : perturbations) entries.push_back(score(p.label(), perturb(key, p)));
  return entries;
}

// --- reports ----------------------------------------------------------------

struct AnalysisReport {
  std::optional<double> rho;  // nullopt: correlation undefined (constant signal)
  SpectralEntropy entropy;
  std::vector<SpectrumBin> psd;
  double key_space_log10 = 0.0;
  bool has_reference = false;
  std::optional<double> reference_correlation;  // nullopt with has_reference: undefined
  std::size_t sample_count = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t channels = 1;
  std::size_t window = kDefaultEntropyWindow;
  std::size_t hop = kDefaultEntropyHop;
};

inline std::optional<double> correlation_or_undefined(std::span<const double> a, std::span<const double> b) {
  try {
    return pearson(a, b);
  } catch (const Error& e) {
    if (e.code() != Errc::undefined_correlation) throw;
    return std::nullopt;
  }
}

inline AnalysisReport analyze(const AudioBuffer& audio, std::size_t window = kDefaultEntropyWindow,
                              std::size_t hop = kDefaultEntropyHop, const AudioBuffer* reference = nullptr) {
  validate(audio);
  const std::span<const double> s = audio.samples;
  if (s.size() < 3) throw Error(Errc::invalid_argument, "need at least 3 samples to analyze");

  AnalysisReport r;
  r.sample_count = s.size();
  r.sample_rate = audio.sample_rate;
  r.channels = audio.channels;
  r.window = window;
  r.hop = hop;
  r.rho = correlation_or_undefined(s.first(s.size() - 1), s.subspan(1));
  r.entropy = spectral_entropy(s, window, hop);
  r.psd = power_spectrum(s, audio.sample_rate);
  r.key_space_log10 = key_space_log10(static_cast<double>(s.size()));
  if (reference) {
    const std::size_t n = std::min(reference->original_len, audio.original_len);
    if (n < 2) throw Error(Errc::invalid_argument, "reference too short to correlate");
    r.has_reference = true;
    r.reference_correlation =
        correlation_or_undefined(s.first(n), std::span<const double>(reference->samples).first(n));
  }
  return r;
}

inline nlohmann::json to_json(const AnalysisReport& r) {
  using nlohmann::json;
  const auto number_or_null = [](std::optional<double> v) { return v ? json(*v) : json(nullptr); };
  json psd = json::array();
  for (const auto& bin : r.psd) psd.push_back({bin.frequency, bin.power});

  json j;
  j["tool_version"] = kToolVersion;
  j["sample_count"] = r.sample_count;
  j["sample_rate"] = r.sample_rate;
  j["channels"] = r.channels;
  j["window"] = r.window;
  j["hop"] = r.hop;
  j["rho"] = number_or_null(r.rho);
  j["rho_defined"] = r.rho.has_value();
  j["entropy_mean"] = std::isnan(r.entropy.mean) ? json(nullptr) : json(r.entropy.mean);
  j["entropy_series"] = r.entropy.series;
  j["entropy_skipped_windows"] = r.entropy.skipped;
  j["psd"] = std::move(psd);
  j["key_space_log10"] = r.key_space_log10;
  if (r.has_reference) j["reference_correlation"] = number_or_null(r.reference_correlation);
  return j;
}

inline void write_entropy_csv(std::ostream& out, const SpectralEntropy& e, double sample_rate) {
  out << "time_s,entropy\n";
  out.precision(17);
  for (std::size_t i = 0; i < e.series.size(); ++i) {
    out << static_cast<double>(e.window_starts[i]) / sample_rate << ',' << e.series[i] << '\n';
  }
}

inline void write_psd_csv(std::ostream& out, std::span<const SpectrumBin> psd) {
  out << "frequency_hz,power\n";
  out.precision(17);
  for (const auto& bin : psd) out << bin.frequency << ',' << bin.power << '\n';
}

/// Lag-1 scatter pairs (s[n], s[n+1]).
inline void write_scatter_csv(std::ostream& out, std::span<const double> samples) {
  out << "x_n,x_n_plus_1\n";
  out.precision(17);
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) out << samples[i] << ',' << samples[i + 1] << '\n';
}

}  // namespace caw
