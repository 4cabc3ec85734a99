#include "vlcbc/energy.hpp"

#include <cmath>

namespace vlcbc {

PvSplit pv_split(const RealWaveform& pv, const LpfSpec& lpf) {
    lpf.validate();
    if (pv.samples.empty()) throw std::invalid_argument("pv_split: empty waveform");
    if (lpf.cutoff >= pv.sample_rate / 2.0)
        throw std::invalid_argument("pv_split: cutoff must be below Nyquist");

    const double alpha =
        1.0 - std::exp(-6.283185307179586 * lpf.cutoff / pv.sample_rate);
    std::vector<double> stage(static_cast<std::size_t>(lpf.order), pv.samples.front());

    // Priming pass: run the cascade once and keep the final states, so the
    // output pass starts in steady state instead of settling over the head
    // of the waveform.
    for (double x : pv.samples)
        for (auto& s : stage) {
            s += alpha * (x - s);
            x = s;
        }

    PvSplit out;
    out.ac.sample_rate = pv.sample_rate;
    out.ac.samples.resize(pv.samples.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < pv.samples.size(); ++i) {
        double x = pv.samples[i];
        for (auto& s : stage) {
            s += alpha * (x - s);
            x = s;
        }
        out.ac.samples[i] = pv.samples[i] - x;
        acc += x;
    }
    out.dc_level = acc / static_cast<double>(pv.samples.size());
    return out;
}

EnergyStore harvest_step(const EnergyStore& store, double p_harvest, double p_load, double dt) {
    store.validate();
    if (dt <= 0.0) throw std::invalid_argument("harvest_step: dt must be > 0");
    if (p_harvest < 0.0 || p_load < 0.0)
        throw std::invalid_argument("harvest_step: powers must be >= 0");
    const double e_max = 0.5 * store.capacitance * store.v_max * store.v_max;
    double e = store.stored_energy() + (p_harvest - p_load) * dt;
    e = std::min(std::max(e, 0.0), e_max);
    EnergyStore out = store;
    out.voltage = std::sqrt(2.0 * e / store.capacitance);
    return out;
}

double energy_neutral_margin(const PowerProfile& profile,
                             const std::map<DeviceState, double>& duty, double p_harvest) {
    profile.validate();
    if (p_harvest < 0.0) throw std::invalid_argument("energy_neutral_margin: p_harvest >= 0");
    double total = 0.0;
    double load = 0.0;
    for (const auto& [state, frac] : duty) {
        if (frac < 0.0) throw std::invalid_argument("energy_neutral_margin: duty >= 0");
        total += frac;
        load += frac * profile.draw(state);
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("energy_neutral_margin: duty fractions must sum to 1");
    return p_harvest - load;
}

}  // namespace vlcbc
