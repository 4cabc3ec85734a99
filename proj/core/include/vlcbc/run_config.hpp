#pragma once

#include <string>

#include "vlcbc/ambd.hpp"
#include "vlcbc/bc_link.hpp"
#include "vlcbc/energy.hpp"
#include "vlcbc/vlc_channel.hpp"
#include "vlcbc/vlc_tx.hpp"

namespace vlcbc {

/// Full run configuration. Every field is overridable from a plain-text file
/// of flat dotted keys (one `key = value` per line, `#` comments, lists comma
/// separated), e.g.
///     vlc.f0_hz = 6000
///     bc.d_tx_bd_m = 0.5
///     sweep.d_rx_list = 0.1,0.2,0.3
struct RunConfig {
    // sweep axes and protocol
    std::vector<double> d_led_list = {0.2, 0.3, 0.4, 0.5};
    std::vector<double> d_rx_list = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<double> p_tx_list = {-25, -20, -15, -10, -5, 0, 5, 10, 15, 20, 25};
    std::vector<AmbdKind> kinds = {AmbdKind::EhOnly, AmbdKind::VlcRelay, AmbdKind::VlcControl};
    std::size_t frames_per_point = 4000;
    std::uint64_t base_seed = 1;
    double d_led_fixed = 0.3;   // held while sweeping d_rx
    double d_rx_fixed = 0.5;    // held while sweeping d_led
    double p_tx_ref_dbm = 0.0;  // power slice used by the report checks

    // downlink modulator
    VlcTxConfig vlc;

    // optical link and photovoltaic front-end
    VlcGeometry opt;
    PvFrontEnd pv;
    double relay_pv_noise = 0.0225;   // V^2 per sample at the comparator input
    double control_pv_noise = 0.0;    // V^2 per sample at the TIA output
    double comparator_hysteresis_frac = 0.1;  // of the analytic AC amplitude

    // energy subsystem
    EnergyStore store;
    PowerProfile power;
    LpfSpec lpf;

    // RF side
    BcGeometry bc;
    RfSourceConfig rf;
    RxFrontEndConfig rx;
    std::size_t guard_chips = 4;  // silent tail appended to every capture

    // receiver
    int sync_threshold = 6;
    std::size_t sync_search_chips = 2;
    double snr_cap_db = 60.0;
    std::size_t payload_len = 18;

    // control pipeline
    int control_command = 1;
    bool sensor_random = true;          // fresh reading per frame
    std::uint32_t sensor_fixed = 0x15A2B;
    std::map<int, BitVector> codebook;  // defaults built in make_default_config()

    void validate() const;

    DemodConfig demod_config() const;
    AmbdConfig ambd_config(AmbdKind kind, double d_led) const;
    VlcGeometry geometry_at(double d_led) const;
    BcGeometry bc_at(double d_rx) const;
    RfSourceConfig rf_at(double p_tx_dbm) const;
    PvFrontEnd pv_for(AmbdKind kind) const;

    /// Analytic photovoltage AC amplitude at the device for distance d_led.
    double pv_ac_amplitude(double d_led) const;
    /// Analytic settled DC photovoltage at distance d_led.
    double pv_dc_level(double d_led) const;

    /// Applies one `key = value` override; throws on unknown keys.
    void set(const std::string& key, const std::string& value);
};

RunConfig make_default_config();

/// Parses a flat dotted-key file on top of the defaults.
RunConfig load_config_file(const std::string& path);

/// Applies a file (if non-empty) and returns the resulting config.
RunConfig config_from_file_or_default(const std::string& path);

}  // namespace vlcbc
