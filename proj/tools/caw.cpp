// caw: chaotic audio wavelet cipher command line.

#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>

#include "caw/cli.hpp"

namespace {

void add_henon_flags(CLI::App& cmd, caw::HenonParams& p, std::string& variant) {
  cmd.add_option("--alpha", p.alpha, "Henon alpha")->capture_default_str();
  cmd.add_option("--beta", p.beta, "Henon beta")->capture_default_str();
  cmd.add_option("--x0", p.x0, "initial x")->capture_default_str();
  cmd.add_option("--y0", p.y0, "initial y")->capture_default_str();
  cmd.add_option("--variant", variant, "map variant")
      ->check(CLI::IsMember({"standard", "paper-literal"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chaotic Henon-map audio cipher over a lifting wavelet transform"};
  app.require_subcommand(1);

  std::string variant = "standard";

  caw::cli::KeygenOptions keygen;
  auto* kg = app.add_subcommand("keygen", "write a key file after checking the map is chaotic");
  kg->add_option("--out", keygen.out, "key file to write")->required();
  add_henon_flags(*kg, keygen.key.henon, variant);
  kg->add_option("--theta", keygen.key.theta, "mixing angle; theta / length must lie in (0, pi/4]")
      ->capture_default_str();
  kg->add_option("--phi", keygen.key.phi, "keystream rotation angle in [0, pi/2]")->capture_default_str();
  kg->add_option("--r", keygen.key.r, "key matrix order (>= 2)")->capture_default_str();
  kg->add_flag("--force", keygen.force, "write the key even if the map is not chaotic");

  caw::cli::CryptOptions enc;
  auto* en = app.add_subcommand("encrypt", "PCM16 WAV in, float64 ciphertext WAV out");
  en->add_option("--in", enc.in)->required()->check(CLI::ExistingFile);
  en->add_option("--key", enc.key)->required()->check(CLI::ExistingFile);
  en->add_option("--out", enc.out)->required();

  caw::cli::CryptOptions dec;
  auto* de = app.add_subcommand("decrypt", "float64 ciphertext WAV in, PCM16 WAV out");
  de->add_option("--in", dec.in)->required()->check(CLI::ExistingFile);
  de->add_option("--key", dec.key)->required()->check(CLI::ExistingFile);
  de->add_option("--out", dec.out)->required();

  caw::cli::AnalyzeOptions ana;
  std::string ref;
  auto* an = app.add_subcommand("analyze", "correlation, spectral entropy, power spectrum report");
  an->add_option("--in", ana.in)->required()->check(CLI::ExistingFile);
  an->add_option("--ref", ref, "reference WAV to correlate against")->check(CLI::ExistingFile);
  an->add_option("--out", ana.out, "output directory")->required();
  an->add_option("--window", ana.window, "entropy window length")->capture_default_str()->check(CLI::PositiveNumber);
  an->add_option("--hop", ana.hop, "entropy hop")->capture_default_str()->check(CLI::PositiveNumber);

  caw::cli::LyapunovOptions lya;
  auto* ly = app.add_subcommand("lyapunov", "Lyapunov spectrum of the Henon map");
  add_henon_flags(*ly, lya.params, variant);
  ly->add_option("--steps", lya.steps, "iterations to average over")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (*kg) {
    keygen.key.henon.variant = caw::parse_variant(variant);
    return caw::cli::run_keygen(keygen, std::cout, std::cerr);
  }
  if (*en) return caw::cli::run_encrypt(enc, std::cout, std::cerr);
  if (*de) return caw::cli::run_decrypt(dec, std::cout, std::cerr);
  if (*an) {
    if (!ref.empty()) ana.reference = ref;
    return caw::cli::run_analyze(ana, std::cout, std::cerr);
  }
  if (*ly) {
    lya.params.variant = caw::parse_variant(variant);
    return caw::cli::run_lyapunov(lya, std::cout, std::cerr);
  }
  return caw::cli::kExitUsage;
}
