#pragma once

#include <map>
#include <optional>

#include "vlcbc/energy.hpp"
#include "vlcbc/rx_demod.hpp"
#include "vlcbc/vlc_tx.hpp"

namespace vlcbc {

enum class AmbdKind { EhOnly, VlcRelay, VlcControl };

const char* ambd_kind_name(AmbdKind k);
std::optional<AmbdKind> ambd_kind_from_name(const std::string& s);

/// Hysteresis comparator regulating the PV AC component (relay pipeline).
struct Comparator {
    double threshold = 0.0;   // V, center
    double hysteresis = 0.0;  // V, full window width

    void validate() const {
        if (hysteresis < 0.0) throw std::invalid_argument("Comparator: hysteresis >= 0");
    }
};

/// Behavioral device configuration shared by the three pipelines.
struct AmbdConfig {
    AmbdKind kind = AmbdKind::EhOnly;
    double f0 = 6000.0;           // Hz, chip 0 switching rate
    double f1 = 8000.0;           // Hz, chip 1 switching rate
    double chip_duration = 5e-4;  // s
    double sample_rate = 200e3;   // Hz, switching waveform rate
    std::size_t payload_len = 18;
    Comparator comparator;
    std::map<int, BitVector> command_codebook;
    std::uint32_t sensor_value = 0x15A2B;  // quantized to payload_len bits
    int sync_threshold = 6;                // control downlink decode

    void validate() const;
};

/// Antenna termination stream; 0 = open, 1 = short.
struct SwitchWaveform {
    std::vector<std::uint8_t> states;
    double sample_rate = 200e3;
    std::size_t size() const { return states.size(); }
};

/// Reflection coefficients of the two terminations.
struct ReflectionPair {
    cplx gamma_open{1.0, 0.0};
    cplx gamma_short{-1.0, 0.0};

    void validate() const {
        if (std::abs(gamma_open) > 1.0 + 1e-12 || std::abs(gamma_short) > 1.0 + 1e-12)
            throw std::invalid_argument("ReflectionPair: |gamma| must be <= 1");
    }
};

/// Manchester-encodes the frame bits and emits one 50%-duty square-wave
/// burst per chip (f0 for chip 0, f1 for chip 1), phase-continuous and
/// quantized to the sample grid.
SwitchWaveform eh_only_baseband(const BitVector& frame_bits, const AmbdConfig& cfg);

/// Hysteresis comparator on the PV AC waveform; the switching rate follows
/// the instantaneous VLC tone.
SwitchWaveform relay_baseband(const RealWaveform& ac, const AmbdConfig& cfg);

/// Runs the shared FSK + Barker + Manchester chain on the photovoltage
/// waveform and exact-matches the decoded payload against the codebook.
std::optional<int> control_decode(const RealWaveform& pv, const AmbdConfig& cfg);

/// Samples the sensor model, frames the quantized reading and emits the
/// MCU baseband for it.
SwitchWaveform control_respond(int cmd, const AmbdConfig& cfg);

/// Constant-open stream (unpowered or idle device).
SwitchWaveform idle_switch(std::size_t n_samples, double sample_rate);

/// Maps termination states onto the reflection stream Gamma(t).
ComplexWaveform apply_reflection(const SwitchWaveform& sw, const ReflectionPair& refl);

/// Devices below the operating voltage emit a constant open state.
bool device_powered(const EnergyStore& store);

/// Sensor reading quantized to `bits` bits, MSB first.
BitVector quantize_sensor(std::uint32_t value, std::size_t bits);

}  // namespace vlcbc
