#include "vlcbc/bc_link.hpp"

#include <cmath>

namespace vlcbc {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kFourPi = 12.566370614359172953850573533118;
}

double RxFrontEndConfig::noise_power_watt() const {
    if (std::isinf(noise_floor_dbm) && noise_floor_dbm < 0.0) return 0.0;
    return dbm_to_watt(noise_floor_dbm);
}

double link_budget_rss(const RfSourceConfig& src, const BcGeometry& g) {
    src.validate();
    g.validate();
    const double p_tx = dbm_to_watt(src.p_tx_dbm);
    const double lam2 = g.wavelength * g.wavelength;
    const double num = p_tx * g.g_tx * g.g_bd * g.g_bd * g.g_rx * lam2 * lam2 * g.mod_factor;
    const double den = kFourPi * kFourPi * kFourPi * kFourPi * g.d_tx_bd * g.d_tx_bd *
                       g.d_rx_bd * g.d_rx_bd;
    return watt_to_dbm(num / den);
}

double direct_path_gain(const RfSourceConfig& src, const BcGeometry& g,
                        const RxFrontEndConfig& fe) {
    src.validate();
    fe.validate();
    if (fe.direct_path_gain >= 0.0) return fe.direct_path_gain;
    const double r = g.wavelength / (kFourPi * fe.d_tx_rx);
    return g.g_tx * g.g_rx * r * r;
}

ComplexWaveform backscatter_capture(const ComplexWaveform& gamma, const RfSourceConfig& src,
                                    const BcGeometry& g, const RxFrontEndConfig& fe, Rng& rng) {
    fe.validate();
    if (gamma.sample_rate != fe.sample_rate)
        throw std::invalid_argument("backscatter_capture: sample-rate mismatch");

    const double a_bs = std::sqrt(dbm_to_watt(link_budget_rss(src, g)));
    const double a_dp = std::sqrt(dbm_to_watt(src.p_tx_dbm) * direct_path_gain(src, g, fe));
    const double theta_bs = rng.uniform_angle();
    const double theta_dp = rng.uniform_angle();
    const cplx bs = a_bs * cplx(std::cos(theta_bs), std::sin(theta_bs));
    const cplx dp = a_dp * cplx(std::cos(theta_dp), std::sin(theta_dp));
    const double sigma2 = fe.noise_power_watt();
    const double sd = std::sqrt(sigma2);

    ComplexWaveform out;
    out.sample_rate = fe.sample_rate;
    out.center_frequency = src.frequency;
    out.samples.resize(gamma.samples.size());

    const bool cfo = fe.carrier_freq_offset != 0.0;
    const double wofs = kTwoPi * fe.carrier_freq_offset / fe.sample_rate;
    for (std::size_t n = 0; n < gamma.samples.size(); ++n) {
        cplx y = bs * gamma.samples[n] + dp;
        if (cfo) {
            const double a = wofs * static_cast<double>(n);
            y *= cplx(std::cos(a), std::sin(a));
        }
        if (sd > 0.0) y += sd * rng.cgaussian();
        out.samples[n] = y;
    }
    return out;
}

}  // namespace vlcbc
