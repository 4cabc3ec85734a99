#include "vlcbc/analysis.hpp"

#include <cmath>

namespace vlcbc {

double theory_ber_ncfsk(double gamma_linear) {
    if (gamma_linear < 0.0) throw std::invalid_argument("theory_ber_ncfsk: gamma must be >= 0");
    return 0.5 * std::exp(-gamma_linear / 2.0);
}

std::vector<std::pair<double, double>> theory_rss_curve(const RfSourceConfig& src,
                                                        const BcGeometry& base,
                                                        const std::vector<double>& d_rx_values) {
    if (d_rx_values.empty()) throw std::invalid_argument("theory_rss_curve: empty grid");
    std::vector<std::pair<double, double>> out;
    out.reserve(d_rx_values.size());
    BcGeometry g = base;
    for (double d : d_rx_values) {
        g.d_rx_bd = d;
        out.emplace_back(d, link_budget_rss(src, g));
    }
    return out;
}

namespace {
double mean_abs_diff_per_cm(const AxisSeries& s) {
    if (s.distances_m.size() != s.values.size() || s.distances_m.size() < 2)
        throw std::invalid_argument("sensitivity: axis needs >= 2 complete points");
    double acc = 0.0;
    for (std::size_t i = 1; i < s.values.size(); ++i) {
        const double dd_cm = (s.distances_m[i] - s.distances_m[i - 1]) * 100.0;
        if (dd_cm <= 0.0)
            throw std::invalid_argument("sensitivity: distances must increase");
        acc += std::abs(s.values[i] - s.values[i - 1]) / dd_cm;
    }
    return acc / static_cast<double>(s.values.size() - 1);
}
}  // namespace

SensitivityRow sensitivity(const AxisSeries& vlc_axis, const AxisSeries& bc_axis) {
    SensitivityRow row;
    row.vlc_raw_per_cm = mean_abs_diff_per_cm(vlc_axis);
    row.bc_raw_per_cm = mean_abs_diff_per_cm(bc_axis);
    const double total = row.vlc_raw_per_cm + row.bc_raw_per_cm;
    if (total > 0.0) {
        row.vlc_axis = row.vlc_raw_per_cm / total;
        row.bc_axis = row.bc_raw_per_cm / total;
    } else {
        row.vlc_axis = 0.5;
        row.bc_axis = 0.5;
    }
    return row;
}

double ber_log10(double b) { return std::log10(std::max(b, 1e-6)); }

}  // namespace vlcbc
