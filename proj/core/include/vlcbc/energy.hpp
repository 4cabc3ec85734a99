#pragma once

#include <map>
#include <string>

#include "vlcbc/waveform.hpp"

namespace vlcbc {

/// Supercapacitor bank (four 0.1 F units in parallel by default).
struct EnergyStore {
    double capacitance = 0.4;     // F
    double voltage = 3.3;         // V
    double v_max = 3.3;           // V
    double v_min_operate = 1.8;   // V, below this the device is off

    void validate() const {
        if (capacitance <= 0.0) throw std::invalid_argument("EnergyStore: capacitance > 0");
        if (voltage < 0.0 || voltage > v_max)
            throw std::invalid_argument("EnergyStore: voltage must lie in [0, v_max]");
        if (v_min_operate >= v_max)
            throw std::invalid_argument("EnergyStore: v_min_operate must be below v_max");
    }
    double stored_energy() const { return 0.5 * capacitance * voltage * voltage; }
};

/// Per-state power draw in watts.
enum class DeviceState { Sleep, Decode, Sense, Modulate };

struct PowerProfile {
    double sleep = 1e-6;
    double decode = 100e-6;
    double sense = 500e-6;
    double modulate = 50e-6;

    double draw(DeviceState s) const {
        switch (s) {
            case DeviceState::Sleep: return sleep;
            case DeviceState::Decode: return decode;
            case DeviceState::Sense: return sense;
            case DeviceState::Modulate: return modulate;
        }
        return 0.0;
    }
    void validate() const {
        if (sleep < 0 || decode < 0 || sense < 0 || modulate < 0)
            throw std::invalid_argument("PowerProfile: draws must be >= 0");
    }
};

/// Harvester low-pass filter, cascaded single-pole sections.
struct LpfSpec {
    double cutoff = 100.0;  // Hz
    int order = 1;

    void validate() const {
        if (cutoff <= 0.0) throw std::invalid_argument("LpfSpec: cutoff must be > 0");
        if (order < 1) throw std::invalid_argument("LpfSpec: order must be >= 1");
    }
};

struct PvSplit {
    double dc_level = 0.0;  // V, settled low-pass output
    RealWaveform ac;        // input minus the low-pass path, per sample
};

/// Splits a photovoltage waveform into the harvested DC level and the
/// information-bearing AC residue. dc path + ac path reconstructs the input
/// sample for sample.
PvSplit pv_split(const RealWaveform& pv, const LpfSpec& lpf);

/// One storage step: E' = clamp(E + (p_harvest - p_load)*dt, 0, E_max).
EnergyStore harvest_step(const EnergyStore& store, double p_harvest, double p_load, double dt);

/// p_harvest minus the duty-weighted draw; >= 0 means sustainable.
/// Duty fractions must sum to 1 within 1e-9.
double energy_neutral_margin(const PowerProfile& profile,
                             const std::map<DeviceState, double>& duty, double p_harvest);

}  // namespace vlcbc
