#include "vlcbc/vlc_channel.hpp"

#include <cmath>

namespace vlcbc {

double lambertian_gain(const VlcGeometry& g) {
    g.validate();
    if (g.incidence_angle > g.fov_half_angle) return 0.0;  // modeled outage
    const double m = g.lambertian_order;
    return (m + 1.0) * g.detector_area * std::pow(std::cos(g.emit_angle), m) *
           std::cos(g.incidence_angle) /
           (6.283185307179586476925286766559 * g.d_led_bd * g.d_led_bd);
}

RealWaveform propagate_vlc(const RealWaveform& tx, const VlcGeometry& g, const PvFrontEnd& fe,
                           Rng& rng) {
    fe.validate();
    const double scale = lambertian_gain(g) * fe.responsivity * fe.load_resistance;
    RealWaveform out;
    out.sample_rate = tx.sample_rate;
    out.samples.resize(tx.samples.size());
    const double sd = std::sqrt(fe.electrical_noise_power);
    for (std::size_t i = 0; i < tx.samples.size(); ++i) {
        if (tx.samples[i] < 0.0)
            throw std::invalid_argument("propagate_vlc: optical intensity must be >= 0");
        double v = tx.samples[i] * scale;
        if (sd > 0.0) v += sd * rng.gaussian();
        out.samples[i] = v;
    }
    return out;
}

}  // namespace vlcbc
