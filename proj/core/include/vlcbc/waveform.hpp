#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace vlcbc {

using cplx = std::complex<double>;

/// Uniformly sampled real-valued signal. Amplitude units depend on context
/// (normalized intensity, optical watts, or photovoltage).
struct RealWaveform {
    std::vector<double> samples;
    double sample_rate = 0.0;  // Hz

    RealWaveform() = default;
    RealWaveform(std::vector<double> s, double fs) : samples(std::move(s)), sample_rate(fs) {}
    std::size_t size() const { return samples.size(); }
};

/// Complex baseband capture. center_frequency is the RF carrier this
/// baseband representation is centred on.
struct ComplexWaveform {
    std::vector<cplx> samples;
    double sample_rate = 0.0;      // Hz
    double center_frequency = 0.0; // Hz

    ComplexWaveform() = default;
    ComplexWaveform(std::vector<cplx> s, double fs, double fc = 0.0)
        : samples(std::move(s)), sample_rate(fs), center_frequency(fc) {}
    std::size_t size() const { return samples.size(); }
};

/// Deterministic generator: xoshiro256++ 1.0 seeded through splitmix64,
/// Gaussians via the polar Box-Muller transform. The algorithm is fixed so
/// that (seed -> sample stream) is stable; substreams are derived by
/// splitmix64 chaining, never by sharing state.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto& w : state_) w = splitmix64(z);
        have_spare_ = false;
        spare_ = 0.0;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0,1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Single fair bit.
    int bit() { return static_cast<int>(next_u64() >> 63); }

    /// Standard normal draw (polar Box-Muller, cached spare).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    /// Zero-mean circularly symmetric complex Gaussian with E|z|^2 = 1.
    cplx cgaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return cplx(re * 0.70710678118654752440, im * 0.70710678118654752440);
    }

    double uniform_angle() { return uniform() * 6.283185307179586476925286766559; }

    /// Derive an independent substream seed from a parent seed and tags.
    static std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
        std::uint64_t z = seed;
        std::uint64_t acc = splitmix64(z);
        for (std::uint64_t t : tags) {
            z = acc ^ (t + 0x9e3779b97f4a7c15ULL);
            acc = splitmix64(z);
        }
        return acc;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    static std::uint64_t splitmix64(std::uint64_t& z) {
        z += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = z;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t state_[4];
    double spare_;
    bool have_spare_;
};

inline double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace vlcbc
