#include "vlcbc/ambd.hpp"

#include <cmath>

namespace vlcbc {

const char* ambd_kind_name(AmbdKind k) {
    switch (k) {
        case AmbdKind::EhOnly: return "eh";
        case AmbdKind::VlcRelay: return "relay";
        case AmbdKind::VlcControl: return "control";
    }
    return "?";
}

std::optional<AmbdKind> ambd_kind_from_name(const std::string& s) {
    if (s == "eh") return AmbdKind::EhOnly;
    if (s == "relay") return AmbdKind::VlcRelay;
    if (s == "control") return AmbdKind::VlcControl;
    return std::nullopt;
}

void AmbdConfig::validate() const {
    if (f0 <= 0.0 || f1 <= f0) throw std::invalid_argument("AmbdConfig: need 0 < f0 < f1");
    if (chip_duration <= 0.0 || sample_rate <= 0.0)
        throw std::invalid_argument("AmbdConfig: chip_duration and sample_rate must be > 0");
    if (payload_len < 1) throw std::invalid_argument("AmbdConfig: payload_len >= 1");
    comparator.validate();
    for (auto it = command_codebook.begin(); it != command_codebook.end(); ++it) {
        if (it->second.size() != payload_len)
            throw std::invalid_argument("AmbdConfig: codebook pattern length mismatch");
        for (auto jt = std::next(it); jt != command_codebook.end(); ++jt)
            if (it->second == jt->second)
                throw std::invalid_argument("AmbdConfig: codebook patterns must be distinct");
    }
}

SwitchWaveform eh_only_baseband(const BitVector& frame_bits, const AmbdConfig& cfg) {
    cfg.validate();
    const ChipStream chips = manchester_encode(frame_bits, cfg.chip_duration);
    const std::size_t spc =
        static_cast<std::size_t>(std::llround(cfg.chip_duration * cfg.sample_rate));
    SwitchWaveform out;
    out.sample_rate = cfg.sample_rate;
    out.states.resize(chips.chips.size() * spc);

    double cycles = 0.0;  // running cycle count; first half of each cycle drives short
    std::size_t n = 0;
    for (auto c : chips.chips) {
        const double step = (c ? cfg.f1 : cfg.f0) / cfg.sample_rate;
        for (std::size_t k = 0; k < spc; ++k) {
            const double frac = cycles - std::floor(cycles);
            out.states[n++] = frac < 0.5 ? 1 : 0;
            cycles += step;
            if (cycles >= 1e9) cycles -= std::floor(cycles);
        }
    }
    return out;
}

SwitchWaveform relay_baseband(const RealWaveform& ac, const AmbdConfig& cfg) {
    cfg.validate();
    SwitchWaveform out;
    out.sample_rate = ac.sample_rate;
    out.states.resize(ac.samples.size());
    const double hi = cfg.comparator.threshold + cfg.comparator.hysteresis / 2.0;
    const double lo = cfg.comparator.threshold - cfg.comparator.hysteresis / 2.0;
    std::uint8_t state = 0;  // open until the first upward crossing
    for (std::size_t i = 0; i < ac.samples.size(); ++i) {
        const double v = ac.samples[i];
        if (state == 0 && v > hi)
            state = 1;
        else if (state == 1 && v < lo)
            state = 0;
        out.states[i] = state;
    }
    return out;
}

std::optional<int> control_decode(const RealWaveform& pv, const AmbdConfig& cfg) {
    cfg.validate();
    DemodConfig dc;
    dc.f0 = cfg.f0;
    dc.f1 = cfg.f1;
    dc.chip_duration = cfg.chip_duration;
    dc.payload_len = cfg.payload_len;
    dc.sync_threshold = cfg.sync_threshold;

    const auto off = sync_barker(pv, dc);
    if (!off) return std::nullopt;
    const std::size_t L = dc.chip_samples(pv.sample_rate);
    if (*off + dc.frame_chips() * L > pv.samples.size()) return std::nullopt;
    const auto chips = fsk_chip_detect(pv, dc, *off, dc.frame_chips());
    const BitVector bits = manchester_decode(chips);
    const BitVector payload(bits.begin() + 7, bits.end());
    for (const auto& [id, pattern] : cfg.command_codebook)
        if (pattern == payload) return id;
    return std::nullopt;
}

SwitchWaveform control_respond(int cmd, const AmbdConfig& cfg) {
    cfg.validate();
    if (cfg.command_codebook.find(cmd) == cfg.command_codebook.end())
        throw std::invalid_argument("control_respond: unknown command");
    FrameSpec spec;
    spec.payload_len = cfg.payload_len;
    const BitVector payload = quantize_sensor(cfg.sensor_value, cfg.payload_len);
    return eh_only_baseband(build_frame(spec, payload), cfg);
}

SwitchWaveform idle_switch(std::size_t n_samples, double sample_rate) {
    SwitchWaveform out;
    out.sample_rate = sample_rate;
    out.states.assign(n_samples, 0);
    return out;
}

ComplexWaveform apply_reflection(const SwitchWaveform& sw, const ReflectionPair& refl) {
    refl.validate();
    ComplexWaveform out;
    out.sample_rate = sw.sample_rate;
    out.center_frequency = 0.0;
    out.samples.resize(sw.states.size());
    for (std::size_t i = 0; i < sw.states.size(); ++i)
        out.samples[i] = sw.states[i] ? refl.gamma_short : refl.gamma_open;
    return out;
}

bool device_powered(const EnergyStore& store) { return store.voltage >= store.v_min_operate; }

BitVector quantize_sensor(std::uint32_t value, std::size_t bits) {
    BitVector out(bits);
    for (std::size_t i = 0; i < bits; ++i)
        out[i] = static_cast<std::uint8_t>((value >> (bits - 1 - i)) & 1u);
    return out;
}

}  // namespace vlcbc
