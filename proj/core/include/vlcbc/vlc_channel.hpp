#pragma once

#include "vlcbc/waveform.hpp"

namespace vlcbc {

/// Line-of-sight Lambertian link geometry between the LED array and the
/// device's photovoltaic front-end.
struct VlcGeometry {
    double d_led_bd = 0.3;          // m
    double emit_angle = 0.0;        // rad, phi
    double incidence_angle = 0.0;   // rad, psi
    double lambertian_order = 1.0;  // m >= 1
    double detector_area = 1e-4;    // m^2
    double fov_half_angle = 1.0471975511965976;  // rad (60 deg)

    void validate() const {
        if (d_led_bd <= 0.0) throw std::invalid_argument("VlcGeometry: d_led_bd must be > 0");
        if (detector_area <= 0.0)
            throw std::invalid_argument("VlcGeometry: detector_area must be > 0");
        if (lambertian_order < 1.0)
            throw std::invalid_argument("VlcGeometry: lambertian_order must be >= 1");
        const double half_pi = 1.5707963267948966;
        if (emit_angle < 0.0 || emit_angle >= half_pi || incidence_angle < 0.0 ||
            incidence_angle >= half_pi || fov_half_angle < 0.0 || fov_half_angle >= half_pi)
            throw std::invalid_argument("VlcGeometry: angles must lie in [0, pi/2)");
    }
};

/// Photovoltaic front-end: optical watts in, volts out, with additive
/// Gaussian electrical noise lumped at the output.
struct PvFrontEnd {
    double responsivity = 0.5;           // A/W
    double load_resistance = 1000.0;     // ohm
    double conversion_efficiency = 0.75; // harvested DC path
    double electrical_noise_power = 0.0; // per-sample variance at the output

    void validate() const {
        if (responsivity <= 0.0) throw std::invalid_argument("PvFrontEnd: responsivity > 0");
        if (load_resistance <= 0.0) throw std::invalid_argument("PvFrontEnd: load > 0");
        if (conversion_efficiency <= 0.0 || conversion_efficiency > 1.0)
            throw std::invalid_argument("PvFrontEnd: efficiency in (0,1]");
        if (electrical_noise_power < 0.0)
            throw std::invalid_argument("PvFrontEnd: noise power >= 0");
    }
};

/// LOS channel gain (m+1)*A*cos^m(phi)*cos(psi) / (2*pi*d^2), zero outside
/// the field of view.
double lambertian_gain(const VlcGeometry& g);

/// Optical intensity -> photovoltage: out = tx * gain * responsivity * load
/// plus electrical AWGN. Rejects negative input samples.
RealWaveform propagate_vlc(const RealWaveform& tx, const VlcGeometry& g, const PvFrontEnd& fe,
                           Rng& rng);

}  // namespace vlcbc
