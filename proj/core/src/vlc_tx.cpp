#include "vlcbc/vlc_tx.hpp"

#include <cmath>

namespace vlcbc {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void VlcTxConfig::validate() const {
    if (sample_rate <= 0.0) throw std::invalid_argument("VlcTxConfig: sample_rate must be > 0");
    if (chip_duration <= 0.0) throw std::invalid_argument("VlcTxConfig: chip_duration must be > 0");
    if (f0 <= 2000.0 || f1 <= 2000.0)
        throw std::invalid_argument("VlcTxConfig: tones must sit above 2 kHz (flicker limit)");
    if (f1 <= f0) throw std::invalid_argument("VlcTxConfig: f1 must exceed f0");
    if (f0 >= sample_rate / 2.0 || f1 >= sample_rate / 2.0)
        throw std::invalid_argument("VlcTxConfig: tones must be below Nyquist");
    const double k = (f1 - f0) * chip_duration;
    if (std::abs(k - std::round(k)) > 1e-9 || k < 0.5)
        throw std::invalid_argument(
            "VlcTxConfig: (f1-f0)*chip_duration must be a positive integer");
    if (modulation_index <= 0.0 || modulation_index > 1.0)
        throw std::invalid_argument("VlcTxConfig: modulation_index must lie in (0,1]");
    if (optical_power_dc <= 0.0)
        throw std::invalid_argument("VlcTxConfig: optical_power_dc must be > 0");
}

BitVector prbs_payload(Rng& rng, std::size_t len) {
    if (len < 1) throw std::invalid_argument("prbs_payload: len must be >= 1");
    BitVector out(len);
    for (auto& b : out) b = static_cast<std::uint8_t>(rng.bit());
    return out;
}

BitVector build_frame(const FrameSpec& spec, const BitVector& payload) {
    spec.validate();
    if (payload.size() != spec.payload_len)
        throw std::invalid_argument("build_frame: payload length mismatch");
    BitVector out;
    out.reserve(spec.preamble.size() + payload.size());
    out.insert(out.end(), spec.preamble.begin(), spec.preamble.end());
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

ChipStream manchester_encode(const BitVector& bits, double chip_duration) {
    ChipStream out;
    out.chip_duration = chip_duration;
    out.chips.reserve(bits.size() * 2);
    for (auto b : bits) {
        if (b) {
            out.chips.push_back(1);
            out.chips.push_back(0);
        } else {
            out.chips.push_back(0);
            out.chips.push_back(1);
        }
    }
    return out;
}

RealWaveform bfsk_intensity(const ChipStream& chips, const VlcTxConfig& cfg) {
    cfg.validate();
    const std::size_t spc =
        static_cast<std::size_t>(std::llround(cfg.chip_duration * cfg.sample_rate));
    RealWaveform out;
    out.sample_rate = cfg.sample_rate;
    out.samples.resize(chips.chips.size() * spc);

    double phase = 0.0;  // accumulated phase keeps the FSK continuous (CPFSK)
    std::size_t n = 0;
    for (auto c : chips.chips) {
        const double w = kTwoPi * (c ? cfg.f1 : cfg.f0) / cfg.sample_rate;
        for (std::size_t k = 0; k < spc; ++k) {
            out.samples[n++] =
                cfg.optical_power_dc * (1.0 + cfg.modulation_index * std::sin(phase));
            phase += w;
            if (phase > kTwoPi) phase -= kTwoPi;
        }
    }
    return out;
}

}  // namespace vlcbc
