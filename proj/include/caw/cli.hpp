#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "caw/analysis.hpp"
#include "caw/audio_io.hpp"
#include "caw/chaos.hpp"
#include "caw/cipher.hpp"
#include "caw/error.hpp"
#include "caw/keying.hpp"

// Command bodies behind the `caw` executable. Each returns a process exit
// status and writes diagnostics to `err`; none of them print key values.

namespace caw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr std::size_t kKeygenLyapunovSteps = 100000;

struct KeygenOptions {
  std::filesystem::path out;
  KeyMaterial key;
  bool force = false;
};

struct CryptOptions {
  std::filesystem::path in;
  std::filesystem::path key;
  std::filesystem::path out;
};

struct AnalyzeOptions {
  std::filesystem::path in;
  std::optional<std::filesystem::path> reference;
  std::filesystem::path out;
  std::size_t window = kDefaultEntropyWindow;
  std::size_t hop = kDefaultEntropyHop;
};

struct LyapunovOptions {
  HenonParams params;
  std::size_t steps = 1000000;
};

namespace detail {

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error (" << errc_name(e.code()) << "): " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

inline void write_text(const std::filesystem::path& path, const auto& emit) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot open " + path.string() + " for writing");
  emit(out);
  out.flush();
  if (!out) throw Error(Errc::io, "write failed: " + path.string());
}

}  // namespace detail

inline int run_keygen(const KeygenOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    validate_key(opts.key);
  } catch (const Error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return detail::guarded(err, [&] {
    bool chaotic = false;
    try {
      chaotic = lyapunov_exponents(opts.key.henon, kKeygenLyapunovSteps).largest > 0.0;
    } catch (const Error& e) {
      if (e.code() != Errc::divergence) throw;
    }
    if (!chaotic && !opts.force) {
      err << "error: parameters do not produce a chaotic orbit (largest Lyapunov exponent <= 0); "
             "use --force to write the key anyway\n";
      return kExitFailure;
    }
    write_key_file(opts.key, opts.out);
    out << "key written to " << opts.out.string() << (chaotic ? " (chaos check passed)" : " (chaos check forced)")
        << '\n';
    return kExitOk;
  });
}

inline int run_encrypt(const CryptOptions& opts, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const KeyMaterial key = read_key_file(opts.key);
    const AudioBuffer plain = read_wav(opts.in);
    const AudioBuffer cipher = encrypt(plain, key);
    write_wav(cipher, opts.out, SampleFormat::float64);
    out << "encrypted " << plain.original_len << " samples to " << opts.out.string() << '\n';
    return kExitOk;
  });
}

// Output is written as PCM16; samples outside [-1, 1] (a wrong key) are
// clipped rather than rejected so the noise can still be inspected.
inline int run_decrypt(const CryptOptions& opts, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const KeyMaterial key = read_key_file(opts.key);
    const AudioBuffer cipher = read_wav(opts.in);
    AudioBuffer plain = decrypt(cipher, key);
    std::size_t clipped = 0;
    for (double& v : plain.samples) {
      if (v < -1.0 || v > 1.0) {
        ++clipped;
        v = std::clamp(v, -1.0, 1.0);
      }
    }
    write_wav(plain, opts.out, SampleFormat::pcm16);
    out << "decrypted " << plain.original_len << " samples to " << opts.out.string() << '\n';
    if (clipped > 0) {
      err << "warning: " << clipped << " samples clipped to [-1, 1]; the key may not match\n";
    }
    return kExitOk;
  });
}

inline int run_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const AudioBuffer audio = read_wav(opts.in);
    std::optional<AudioBuffer> reference;
    if (opts.reference) reference = read_wav(*opts.reference);
    const AnalysisReport report = analyze(audio, opts.window, opts.hop, reference ? &*reference : nullptr);

    std::filesystem::create_directories(opts.out);
    detail::write_text(opts.out / "report.json", [&](std::ostream& s) { s << to_json(report).dump(2) << '\n'; });
    detail::write_text(opts.out / "entropy.csv",
                       [&](std::ostream& s) { write_entropy_csv(s, report.entropy, audio.sample_rate); });
    detail::write_text(opts.out / "psd.csv", [&](std::ostream& s) { write_psd_csv(s, report.psd); });
    detail::write_text(opts.out / "scatter.csv", [&](std::ostream& s) { write_scatter_csv(s, audio.samples); });

    if (report.rho) {
      out << "rho=" << *report.rho;
    } else {
      out << "rho=undefined";
    }
    out << " entropy_mean=" << report.entropy.mean << " key_space_log10=" << report.key_space_log10 << '\n';
    out << "report written to " << opts.out.string() << '\n';
    return kExitOk;
  });
}

inline int run_lyapunov(const LyapunovOptions& opts, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const LyapunovSpectrum s = lyapunov_exponents(opts.params, opts.steps);
    out.precision(10);
    out << "lambda1=" << s.largest << " lambda2=" << s.smallest << " sum=" << s.largest + s.smallest
        << (s.largest > 0.0 ? " chaotic" : " not-chaotic") << '\n';
    return kExitOk;
  });
}

}  // namespace caw::cli
