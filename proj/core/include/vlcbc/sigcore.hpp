#pragma once

#include "vlcbc/waveform.hpp"

namespace vlcbc {

/// Sine tone: samples[n] = sin(2*pi*freq*n/sample_rate + phase),
/// length = round(duration*sample_rate). Rejects freq outside (0, fs/2).
RealWaveform make_tone(double freq_hz, double duration_s, double sample_rate_hz,
                       double phase_rad = 0.0);

/// Adds i.i.d. zero-mean Gaussian noise of per-sample variance noise_power.
/// noise_power == 0 returns the input unchanged.
RealWaveform add_awgn(const RealWaveform& w, double noise_power, Rng& rng);

/// Complex variant: circularly symmetric noise, E|n|^2 = noise_power.
ComplexWaveform add_awgn(const ComplexWaveform& w, double noise_power, Rng& rng);

/// Single-bin DFT energy over the window [start, start+len):
///   |sum_n w[start+n] * exp(-j*2*pi*freq*n/fs)|^2 / len
/// Rectangular window; equals the Goertzel result for the same bin.
double tone_energy(const RealWaveform& w, double freq_hz, std::size_t start, std::size_t len);
double tone_energy(const ComplexWaveform& w, double freq_hz, std::size_t start, std::size_t len);

/// Raw windowed correlation sum_n w[start+n] * exp(-j*2*pi*freq*n/fs).
cplx tone_correlation(const cplx* w, double sample_rate, double freq_hz, std::size_t len);
cplx tone_correlation(const double* w, double sample_rate, double freq_hz, std::size_t len);

}  // namespace vlcbc
