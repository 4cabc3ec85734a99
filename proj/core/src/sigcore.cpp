#include "vlcbc/sigcore.hpp"

#include <cmath>

namespace vlcbc {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

RealWaveform make_tone(double freq_hz, double duration_s, double sample_rate_hz,
                       double phase_rad) {
    if (sample_rate_hz <= 0.0) throw std::invalid_argument("make_tone: sample_rate must be > 0");
    if (freq_hz <= 0.0 || freq_hz >= sample_rate_hz / 2.0)
        throw std::invalid_argument("make_tone: freq must lie in (0, fs/2)");
    if (duration_s <= 0.0) throw std::invalid_argument("make_tone: duration must be > 0");

    const std::size_t n = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
    RealWaveform out;
    out.sample_rate = sample_rate_hz;
    out.samples.resize(n);
    const double w = kTwoPi * freq_hz / sample_rate_hz;
    for (std::size_t i = 0; i < n; ++i)
        out.samples[i] = std::sin(w * static_cast<double>(i) + phase_rad);
    return out;
}

RealWaveform add_awgn(const RealWaveform& w, double noise_power, Rng& rng) {
    if (noise_power < 0.0) throw std::invalid_argument("add_awgn: noise_power must be >= 0");
    if (noise_power == 0.0) return w;
    RealWaveform out = w;
    const double sd = std::sqrt(noise_power);
    for (auto& s : out.samples) s += sd * rng.gaussian();
    return out;
}

ComplexWaveform add_awgn(const ComplexWaveform& w, double noise_power, Rng& rng) {
    if (noise_power < 0.0) throw std::invalid_argument("add_awgn: noise_power must be >= 0");
    if (noise_power == 0.0) return w;
    ComplexWaveform out = w;
    const double sd = std::sqrt(noise_power);
    for (auto& s : out.samples) s += sd * rng.cgaussian();
    return out;
}

cplx tone_correlation(const cplx* w, double sample_rate, double freq_hz, std::size_t len) {
    // Recurrence phasor: rotating by a fixed step accumulates rounding over
    // thousands of samples, so fall back to direct evaluation every chunk.
    const double step = -kTwoPi * freq_hz / sample_rate;
    cplx acc(0.0, 0.0);
    constexpr std::size_t kChunk = 64;
    for (std::size_t base = 0; base < len; base += kChunk) {
        const std::size_t m = std::min(kChunk, len - base);
        cplx ph(std::cos(step * static_cast<double>(base)),
                std::sin(step * static_cast<double>(base)));
        const cplx rot(std::cos(step), std::sin(step));
        for (std::size_t k = 0; k < m; ++k) {
            acc += w[base + k] * ph;
            ph *= rot;
        }
    }
    return acc;
}

cplx tone_correlation(const double* w, double sample_rate, double freq_hz, std::size_t len) {
    const double step = -kTwoPi * freq_hz / sample_rate;
    cplx acc(0.0, 0.0);
    constexpr std::size_t kChunk = 64;
    for (std::size_t base = 0; base < len; base += kChunk) {
        const std::size_t m = std::min(kChunk, len - base);
        cplx ph(std::cos(step * static_cast<double>(base)),
                std::sin(step * static_cast<double>(base)));
        const cplx rot(std::cos(step), std::sin(step));
        for (std::size_t k = 0; k < m; ++k) {
            acc += w[base + k] * ph;
            ph *= rot;
        }
    }
    return acc;
}

namespace {
template <typename Sample>
double tone_energy_impl(const std::vector<Sample>& s, double fs, double freq, std::size_t start,
                        std::size_t len) {
    if (fs <= 0.0) throw std::invalid_argument("tone_energy: sample_rate must be > 0");
    if (std::abs(freq) >= fs / 2.0)
        throw std::invalid_argument("tone_energy: |freq| must be below Nyquist");
    if (len == 0 || start > s.size() || start + len > s.size())
        throw std::out_of_range("tone_energy: window outside waveform");
    const cplx c = tone_correlation(s.data() + start, fs, freq, len);
    return std::norm(c) / static_cast<double>(len);
}
}  // namespace

double tone_energy(const RealWaveform& w, double freq_hz, std::size_t start, std::size_t len) {
    return tone_energy_impl(w.samples, w.sample_rate, freq_hz, start, len);
}

double tone_energy(const ComplexWaveform& w, double freq_hz, std::size_t start, std::size_t len) {
    return tone_energy_impl(w.samples, w.sample_rate, freq_hz, start, len);
}

}  // namespace vlcbc
