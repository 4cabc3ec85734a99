#pragma once

#include "vlcbc/waveform.hpp"

namespace vlcbc {

/// Bistatic backscatter geometry: ambient source -> device -> receiver.
struct BcGeometry {
    double d_tx_bd = 0.5;   // m, ambient source to device
    double d_rx_bd = 0.5;   // m, device to receiver
    double g_tx = 1.0;
    double g_bd = 1.0;
    double g_rx = 1.0;
    double wavelength = 299792458.0 / 2.4e9;  // m (~0.12491 at 2.4 GHz)
    double mod_factor = 1.0;                  // M in (0,1]

    void validate() const {
        if (d_tx_bd <= 0.0 || d_rx_bd <= 0.0)
            throw std::invalid_argument("BcGeometry: distances must be > 0");
        if (g_tx <= 0.0 || g_bd <= 0.0 || g_rx <= 0.0)
            throw std::invalid_argument("BcGeometry: gains must be > 0");
        if (wavelength <= 0.0) throw std::invalid_argument("BcGeometry: wavelength must be > 0");
        if (mod_factor <= 0.0 || mod_factor > 1.0)
            throw std::invalid_argument("BcGeometry: mod_factor must lie in (0,1]");
    }
};

/// Continuous sine-wave ambient carrier.
struct RfSourceConfig {
    double p_tx_dbm = 0.0;
    double frequency = 2.4e9;  // Hz
    double phase = 0.0;        // rad

    void validate() const {
        if (frequency <= 0.0) throw std::invalid_argument("RfSourceConfig: frequency > 0");
    }
};

/// Receiver front-end capturing complex baseband around the carrier.
struct RxFrontEndConfig {
    double sample_rate = 200e3;       // Hz
    double noise_floor_dbm = -58.0;   // total noise power in the capture bandwidth
    double d_tx_rx = 0.7;             // m, source-to-receiver straight path
    double direct_path_gain = -1.0;   // dimensionless power gain; < 0 means Friis over d_tx_rx
    double carrier_freq_offset = 0.0; // Hz

    void validate() const {
        if (sample_rate <= 0.0) throw std::invalid_argument("RxFrontEndConfig: sample_rate > 0");
        if (d_tx_rx <= 0.0) throw std::invalid_argument("RxFrontEndConfig: d_tx_rx > 0");
    }
    double noise_power_watt() const;
};

/// Dyadic free-space link budget in dBm:
///   P_rx = P_tx * g_tx * g_bd^2 * g_rx * lambda^4 * M / ((4*pi)^4 * d1^2 * d2^2)
double link_budget_rss(const RfSourceConfig& src, const BcGeometry& g);

/// Friis power gain of the source->receiver direct path.
double direct_path_gain(const RfSourceConfig& src, const BcGeometry& g,
                        const RxFrontEndConfig& fe);

/// Complex baseband capture of the reflection stream:
///   y[n] = (A_bs*Gamma[n]*e^{j theta} + A_dp*e^{j theta_dp}) * e^{j 2 pi cfo n/fs} + w[n]
/// |A_bs|^2 equals the link budget in linear watts, so a {+1,-1} Gamma swing
/// reproduces the budget exactly as sideband power. Phases are drawn once per
/// call (block-static). noise_floor_dbm = -inf disables noise entirely.
ComplexWaveform backscatter_capture(const ComplexWaveform& gamma, const RfSourceConfig& src,
                                    const BcGeometry& g, const RxFrontEndConfig& fe, Rng& rng);

}  // namespace vlcbc
