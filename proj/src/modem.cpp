#include "wearcomm/modem.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wearcomm/rng.hpp"

namespace wearcomm::codec {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Squared magnitude of the DFT of `block` at `freq`, using reference
// tables precomputed for one bit length.
struct BinDetector {
  std::vector<double> cos_ref;
  std::vector<double> sin_ref;

  BinDetector(double freq, double sample_rate, int n) : cos_ref(n), sin_ref(n) {
    for (int i = 0; i < n; ++i) {
      const double w = kTwoPi * freq * i / sample_rate;
      cos_ref[i] = std::cos(w);
      sin_ref[i] = std::sin(w);
    }
  }

  double energy(std::span<const double> block) const {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < block.size(); ++i) {
      re += block[i] * cos_ref[i];
      im += block[i] * sin_ref[i];
    }
    return re * re + im * im;
  }
};

}  // namespace

void validate(const ModemConfig& cfg) {
  const double nyquist = cfg.sample_rate_hz / 2.0;
  if (!(cfg.sample_rate_hz > 0.0)) throw ConfigError("sample_rate must be positive");
  if (cfg.f0_hz == cfg.f1_hz) throw ConfigError("f0 and f1 must differ");
  if (!(cfg.f0_hz > 0.0 && cfg.f0_hz < nyquist) || !(cfg.f1_hz > 0.0 && cfg.f1_hz < nyquist)) {
    throw ConfigError("tone frequencies must lie in (0, sample_rate/2)");
  }
  if (cfg.samples_per_bit < 4) throw ConfigError("samples_per_bit must be at least 4");
  if (!(cfg.channel_attenuation > 0.0 && cfg.channel_attenuation <= 1.0)) {
    throw ConfigError("channel_attenuation must lie in (0, 1]");
  }
  if (!(cfg.noise_sigma >= 0.0) || !std::isfinite(cfg.noise_sigma)) {
    throw ConfigError("noise_sigma must be finite and non-negative");
  }
}

Waveform modulate(std::span<const std::uint8_t> bits, const ModemConfig& cfg) {
  validate(cfg);
  Waveform out;
  out.reserve(bits.size() * static_cast<std::size_t>(cfg.samples_per_bit));
  const double step0 = kTwoPi * cfg.f0_hz / cfg.sample_rate_hz;
  const double step1 = kTwoPi * cfg.f1_hz / cfg.sample_rate_hz;
  double phase = 0.0;
  for (auto bit : bits) {
    const double step = bit ? step1 : step0;
    for (int i = 0; i < cfg.samples_per_bit; ++i) {
      out.push_back(std::sin(phase));
      phase = std::fmod(phase + step, kTwoPi);
    }
  }
  return out;
}

Waveform channel_apply(std::span<const double> waveform, const ModemConfig& cfg) {
  validate(cfg);
  Waveform out(waveform.begin(), waveform.end());
  Rng rng(cfg.seed);
  for (auto& v : out) {
    v *= cfg.channel_attenuation;
    if (cfg.noise_sigma > 0.0) v += cfg.noise_sigma * rng.normal();
  }
  return out;
}

BitSeq demodulate(std::span<const double> waveform, const ModemConfig& cfg) {
  validate(cfg);
  const auto spb = static_cast<std::size_t>(cfg.samples_per_bit);
  if (waveform.size() % spb != 0) {
    throw ConfigError("waveform length " + std::to_string(waveform.size()) +
                      " is not a multiple of samples_per_bit " + std::to_string(spb));
  }
  const BinDetector zero(cfg.f0_hz, cfg.sample_rate_hz, cfg.samples_per_bit);
  const BinDetector one(cfg.f1_hz, cfg.sample_rate_hz, cfg.samples_per_bit);
  BitSeq bits;
  bits.reserve(waveform.size() / spb);
  for (std::size_t off = 0; off < waveform.size(); off += spb) {
    const auto block = waveform.subspan(off, spb);
    bits.push_back(one.energy(block) > zero.energy(block) ? 1 : 0);
  }
  return bits;
}

double measure_ber(const ModemConfig& cfg, std::size_t n_bits) {
  if (n_bits == 0) throw ConfigError("measure_ber: n_bits must be at least 1");
  Rng bit_rng(derive_seed(cfg.seed, 1));
  BitSeq sent(n_bits);
  for (auto& b : sent) b = static_cast<std::uint8_t>(bit_rng.next() >> 63);

  const auto received = demodulate(channel_apply(modulate(sent, cfg), cfg), cfg);
  std::size_t errors = 0;
  for (std::size_t i = 0; i < n_bits; ++i) errors += sent[i] != received[i];
  return static_cast<double>(errors) / static_cast<double>(n_bits);
}

double noise_sigma_for_snr_db(const ModemConfig& cfg, double snr_db) {
  const double signal_power = cfg.channel_attenuation * cfg.channel_attenuation / 2.0;
  return std::sqrt(signal_power / std::pow(10.0, snr_db / 10.0));
}

}  // namespace wearcomm::codec
