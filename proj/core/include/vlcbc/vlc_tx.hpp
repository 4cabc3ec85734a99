#pragma once

#include "vlcbc/waveform.hpp"

namespace vlcbc {

using BitVector = std::vector<std::uint8_t>;

/// Barker-7 preamble used for frame detection and synchronization.
inline const BitVector& barker7() {
    static const BitVector b = {1, 1, 1, 0, 0, 1, 0};
    return b;
}

/// Frame layout: fixed 7-bit Barker preamble followed by the payload.
struct FrameSpec {
    BitVector preamble = barker7();
    std::size_t payload_len = 18;

    void validate() const {
        if (preamble != barker7())
            throw std::invalid_argument("FrameSpec: preamble must be the 7-bit Barker sequence");
        if (payload_len < 1) throw std::invalid_argument("FrameSpec: payload_len must be >= 1");
    }
};

/// Manchester chip stream. Convention (fixed, decoder uses the same table):
/// bit 1 -> chips {1,0}, bit 0 -> chips {0,1}.
struct ChipStream {
    std::vector<std::uint8_t> chips;
    double chip_duration = 5e-4;  // s
};

/// Downlink modulator parameters. Orthogonality requires
/// (f1 - f0) * chip_duration to be a positive integer.
struct VlcTxConfig {
    double f0 = 6000.0;              // Hz, chip 0
    double f1 = 8000.0;              // Hz, chip 1
    double chip_duration = 5e-4;     // s
    double sample_rate = 200e3;      // Hz
    double optical_power_dc = 1.0;   // W, LED bias point
    double modulation_index = 0.5;   // (0, 1]

    void validate() const;
};

/// Uniform random payload bits, reproducible from the generator seed.
BitVector prbs_payload(Rng& rng, std::size_t len);

/// preamble || payload. Rejects payload length mismatch.
BitVector build_frame(const FrameSpec& spec, const BitVector& payload);

/// Manchester encode: output length = 2 * input length.
ChipStream manchester_encode(const BitVector& bits, double chip_duration = 5e-4);

/// Chip-by-chip BFSK intensity waveform, phase-continuous across chips:
/// intensity = optical_power_dc * (1 + modulation_index * tone).
RealWaveform bfsk_intensity(const ChipStream& chips, const VlcTxConfig& cfg);

}  // namespace vlcbc
