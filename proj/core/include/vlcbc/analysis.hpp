#pragma once

#include <utility>

#include "vlcbc/bc_link.hpp"

namespace vlcbc {

/// Closed-form error rate of orthogonal non-coherent BFSK at per-chip SNR
/// gamma (linear): 0.5 * exp(-gamma/2).
double theory_ber_ncfsk(double gamma_linear);

/// Link-budget RSS over a device-to-receiver distance grid, all other
/// geometry held fixed.
std::vector<std::pair<double, double>> theory_rss_curve(const RfSourceConfig& src,
                                                        const BcGeometry& base,
                                                        const std::vector<double>& d_rx_values);

/// One metric sampled along one distance axis.
struct AxisSeries {
    std::vector<double> distances_m;
    std::vector<double> values;
};

struct SensitivityRow {
    double vlc_axis = 0.0;  // normalized, the pair sums to 1
    double bc_axis = 0.0;
    double vlc_raw_per_cm = 0.0;
    double bc_raw_per_cm = 0.0;
};

/// Mean absolute finite difference of the metric per centimetre along each
/// axis, then the two axis values normalized to sum to 1. BER series should
/// be pre-mapped to log10 with a floor (see ber_log10 below); RSS series are
/// used as plain dB values.
SensitivityRow sensitivity(const AxisSeries& vlc_axis, const AxisSeries& bc_axis);

/// log10 with the 1e-6 floor used for BER sensitivity.
double ber_log10(double b);

}  // namespace vlcbc
