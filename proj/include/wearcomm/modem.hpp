#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wearcomm/codec.hpp"

namespace wearcomm::codec {

using Waveform = std::vector<double>;

// Binary FSK over an attenuating, additive-noise channel. Defaults give
// orthogonal tones: one and two full cycles per 16-sample bit.
struct ModemConfig {
  double f0_hz = 1000.0;  // tone for bit 0
  double f1_hz = 2000.0;  // tone for bit 1
  double sample_rate_hz = 16000.0;
  int samples_per_bit = 16;
  double channel_attenuation = 1.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

// Throws ConfigError on f0 == f1, a tone at or above Nyquist, fewer than
// four samples per bit, attenuation outside (0, 1] or negative noise.
void validate(const ModemConfig& cfg);

// Continuous-phase tones, unit amplitude, starting at phase zero.
Waveform modulate(std::span<const std::uint8_t> bits, const ModemConfig& cfg);

// Scales by channel_attenuation and adds N(0, noise_sigma^2) noise seeded
// from cfg.seed.
Waveform channel_apply(std::span<const double> waveform, const ModemConfig& cfg);

// Non-coherent single-bin energy detection per bit; equal energies decode
// as 0. Throws ConfigError if the length is not a multiple of
// samples_per_bit.
BitSeq demodulate(std::span<const double> waveform, const ModemConfig& cfg);

// Fraction of n_bits random bits decoded incorrectly after
// modulate -> channel_apply -> demodulate.
double measure_ber(const ModemConfig& cfg, std::size_t n_bits);

// Per-sample noise sigma giving the requested signal-to-noise ratio, taking
// the received tone power as attenuation^2 / 2.
double noise_sigma_for_snr_db(const ModemConfig& cfg, double snr_db);

}  // namespace wearcomm::codec
