// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "caw/caw.hpp"
#include "caw/cli.hpp"

namespace {

using namespace caw;

std::filesystem::path fixture() { return std::filesystem::path(CAW_FIXTURE_DIR) / "speech.wav"; }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<double> random_pcm(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> code(-32768, 32767);
  std::vector<double> s(n);
  for (auto& v : s) v = code(rng) / 32768.0;
  return s;
}

KeyMaterial random_key(std::mt19937_64& rng, std::size_t l) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  KeyMaterial k;
  k.henon.x0 = 0.2 * u(rng) - 0.1;
  k.henon.y0 = 0.02 * u(rng) - 0.01;
  k.phi = u(rng) * std::numbers::pi / 2;
  k.theta = (0.01 + 0.99 * u(rng)) * static_cast<double>(l) * std::numbers::pi / 4;
  k.r = 2 + static_cast<int>(rng() % 7);
  return k;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Bit-exact lifting round trip on PCM16-grid signals.
Outcome lifting_reconstruction() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<std::size_t> len(2, 100000);
  int odd = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = trial == 0 ? 2 : (trial == 1 ? 100000 : (trial == 2 ? 3 : len(rng)));
    odd += n % 2;
    const auto s = random_pcm(rng, n);
    if (inverse_lwt(forward_lwt(s)) != s) return {false, fmt("mismatch at trial %d (n=%zu)", trial, n)};
  }
  return {odd > 0 && odd < 100, fmt("100 signals bit-identical (%d odd-length)", odd)};
}

// 2. Interior detail coefficients vanish on linear ramps.
Outcome polynomial_cancellation() {
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<int> coef(-4000, 4000);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = coef(rng) / 64.0;
    const double b = coef(rng) / 32.0;
    std::vector<double> s(2 + rng() % 5000);
    for (std::size_t n = 0; n < s.size(); ++n) s[n] = a * static_cast<double>(n) + b;
    const SubbandPair bands = forward_lwt(s);
    for (std::size_t i = 0; i + 1 < bands.detail.size(); ++i) {
      if (bands.detail[i] != 0.0) return {false, fmt("ramp %d detail[%zu] = %g", trial, i, bands.detail[i])};
    }
  }
  return {true, "20 ramps, all interior details exactly 0"};
}

// 3. Round trip on the speech fixture for 10 random keys.
Outcome cipher_round_trip() {
  const AudioBuffer plain = read_wav(fixture());
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const KeyMaterial key = random_key(rng, plain.original_len);
    const AudioBuffer dec = decrypt(encrypt(plain, key), key);
    if (dec.samples.size() != plain.samples.size()) return {false, "length changed"};
    for (std::size_t i = 0; i < plain.samples.size(); ++i) {
      worst = std::max(worst, std::fabs(dec.samples[i] - plain.samples[i]));
      if (quantize_pcm16(dec.samples[i]) != quantize_pcm16(plain.samples[i])) {
        return {false, fmt("PCM16 code differs at sample %zu (key %d)", i, trial)};
      }
    }
  }
  return {worst < 1e-6, fmt("max abs error %.3g (< 1e-6), PCM16 codes bit-equal", worst)};
}

// 4. Lyapunov spectrum of the classic map.
Outcome lyapunov() {
  const auto t0 = std::chrono::steady_clock::now();
  const LyapunovSpectrum s = lyapunov_exponents(HenonParams{}, 1000000);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double sum_err = std::fabs(s.largest + s.smallest - std::log(0.3));
  const bool ok = std::fabs(s.largest - 0.419) <= 0.02 && sum_err <= 1e-3 && s.largest > 0 && s.smallest < 0 &&
                  secs < 5.0;
  return {ok, fmt("lambda1=%.5f lambda2=%.5f |sum-ln0.3|=%.2e in %.2fs", s.largest, s.smallest, sum_err, secs)};
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(CAW_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) && WEXITSTATUS(raw) == 0 ? "" : "cli failed: " + args;
}

// 5. Correlation battery, plus the scatter CSV via the CLI.
Outcome correlation_battery(const std::filesystem::path& work) {
  const AudioBuffer plain = read_wav(fixture());
  const AudioBuffer cipher = encrypt(plain, KeyMaterial{});
  const double rho_plain = adjacent_correlation(plain.samples);
  const double rho_cipher = adjacent_correlation(cipher.samples);

  write_wav(cipher, work / "cipher.wav", SampleFormat::float64);
  if (auto err = run_cli("analyze --in '" + (work / "cipher.wav").string() + "' --out '" + (work / "rep").string() + "'");
      !err.empty()) {
    return {false, err};
  }
  std::ifstream scatter(work / "rep" / "scatter.csv");
  std::string header;
  std::getline(scatter, header);
  std::size_t rows = 0;
  for (std::string line; std::getline(scatter, line);) ++rows;
  const bool csv_ok = header == "x_n,x_n_plus_1" && rows == cipher.samples.size() - 1;

  return {rho_plain > 0.9 && std::fabs(rho_cipher) < 0.2 && csv_ok,
          fmt("plaintext rho=%.4f (>0.9), ciphertext rho=%.4f (|.|<0.2), scatter rows=%zu", rho_plain, rho_cipher,
              rows)};
}

// 6. Spectral entropy battery.
Outcome entropy_battery() {
  const AudioBuffer plain = read_wav(fixture());
  const AudioBuffer cipher = encrypt(plain, KeyMaterial{});
  const SpectralEntropy ep = spectral_entropy(plain.samples);
  const SpectralEntropy ec = spectral_entropy(cipher.samples);
  bool bounded = true;
  for (const auto* e : {&ep, &ec})
    for (double v : e->series) bounded = bounded && v >= 0.0 && v <= 1.0;
  return {ep.mean >= 0.4 && ep.mean <= 0.75 && ec.mean > 0.9 && bounded,
          fmt("plaintext mean=%.4f (in [0.4,0.75]), ciphertext mean=%.4f (>0.9), all values in [0,1]: %s", ep.mean,
              ec.mean, bounded ? "yes" : "no")};
}

// 7. Key space size.
Outcome key_space() {
  const double v = key_space_log10(2e6);
  return {std::fabs(v - 86.235) <= 1e-3 && v > 77.0, fmt("log10 H = %.6f (86.235 +- 0.001)", v)};
}

// 8. Key sensitivity.
Outcome sensitivity_x0(const std::vector<SensitivityEntry>& r) {
  const double exact = *r[0].correlation;
  const double wrong = r[1].correlation.value_or(0.0);
  return {exact > 0.999 && std::fabs(wrong) < 0.1, fmt("exact key corr=%.6f (>0.999), x0+1e-15 corr=%.4f (|.|<0.1)", exact, wrong)};
}

Outcome sensitivity_phi(const std::vector<SensitivityEntry>& r) {
  const double exact = *r[0].correlation;
  const double wrong = r[2].correlation.value_or(0.0);
  return {exact > 0.999 && std::fabs(wrong) < 0.1, fmt("exact key corr=%.6f (>0.999), phi+1e-12 corr=%.4f (|.|<0.1)", exact, wrong)};
}

// 9. Keystream properties.
Outcome keystream_properties() {
  std::mt19937_64 rng(1009);
  for (int trial = 0; trial < 10000; ++trial) {
    const int r = 2 + static_cast<int>(rng() % 6);
    std::vector<std::uint8_t> row(r), a(1 + rng() % 64), b(rng() % 64);
    for (auto* v : {&row, &a, &b})
      for (auto& x : *v) x = static_cast<std::uint8_t>(rng());
    const KeyMatrix m(row);
    const Keystream once = hide_key(a, b, m);
    const Keystream twice = hide_key(once.f1, once.f2, m);
    if (twice.f1 != a || twice.f2 != b) return {false, fmt("involution broke on stream %d", trial)};
  }

  const std::size_t l = 10000;
  const Keystream k1 = derive_keystream(KeyMaterial{}, l);
  const Keystream k2 = derive_keystream(KeyMaterial{}, l);
  const bool deterministic = k1.f1 == k2.f1 && k1.f2 == k2.f2;

  KeyMaterial nudged;
  nudged.henon.x0 += 1e-15;
  const Keystream kn = derive_keystream(nudged, l);
  std::vector<std::uint8_t> base(k1.f1), moved(kn.f1);
  base.insert(base.end(), k1.f2.begin(), k1.f2.end());
  moved.insert(moved.end(), kn.f2.begin(), kn.f2.end());
  std::size_t differ = 0;
  for (std::size_t i = 100; i < base.size(); ++i) differ += base[i] != moved[i];
  const double frac = static_cast<double>(differ) / static_cast<double>(base.size() - 100);
  return {deterministic && frac >= 0.3,
          fmt("10^4 involutions ok, deterministic=%s, byte divergence after index 100 = %.1f%% (>=30%%)",
              deterministic ? "yes" : "no", 100.0 * frac)};
}

// 10. Printed-form map: y decays as beta^n.
Outcome paper_literal_decay() {
  const HenonParams p{1.4, 0.3, 0.01, 0.003, HenonVariant::paper_literal};
  const Orbit o = iterate_henon(p, 50, 0);
  for (std::size_t n = 1; n <= 50; ++n) {
    const double bound = std::fabs(p.y0) * std::pow(0.3, static_cast<double>(n));
    if (std::fabs(o.ys[n - 1]) > bound * (1.0 + 1e-12)) return {false, fmt("|y_%zu| exceeds bound", n)};
  }
  return {true, "|y_n| <= |y_0| 0.3^n for n = 1..50"};
}

}  // namespace

int main() {
  const auto work = std::filesystem::temp_directory_path() / ("caw_acceptance_" + std::to_string(std::random_device{}()));
  std::filesystem::create_directories(work);

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<SensitivityEntry> sens;
  try {
    const std::vector<KeyPerturbation> perturbations = {{KeyField::x0, 1e-15}, {KeyField::phi, 1e-12}};
    sens = key_sensitivity_report(read_wav(fixture()), KeyMaterial{}, perturbations);
  } catch (const std::exception& e) {
    std::printf("sensitivity setup failed: %s\n", e.what());
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1  lifting perfect reconstruction", lifting_reconstruction},
      {"2  polynomial cancellation", polynomial_cancellation},
      {"3  cipher round trip", cipher_round_trip},
      {"4  Lyapunov spectrum", lyapunov},
      {"5  correlation battery", [&] { return correlation_battery(work); }},
      {"6  spectral entropy battery", entropy_battery},
      {"7  key space", key_space},
      {"8a key sensitivity (x0)", [&] { return sens.size() == 3 ? sensitivity_x0(sens) : Outcome{false, "no report"}; }},
      {"8b key sensitivity (phi)", [&] { return sens.size() == 3 ? sensitivity_phi(sens) : Outcome{false, "no report"}; }},
      {"9  keystream properties", keystream_properties},
      {"10 paper-literal y decay", paper_literal_decay},
  };

  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] %-34s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/%zu criteria passed in %.1fs\n", static_cast<int>(criteria.size()) - failures, criteria.size(), secs);

  std::error_code ec;
  std::filesystem::remove_all(work, ec);
  return failures == 0 ? 0 : 1;
}
