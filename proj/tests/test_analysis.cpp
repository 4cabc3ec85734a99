#include <cmath>

#include "doctest.h"
#include "vlcbc/analysis.hpp"

using namespace vlcbc;

TEST_CASE("non-coherent BFSK theory curve values") {
    CHECK(theory_ber_ncfsk(0.0) == doctest::Approx(0.5));
    CHECK(theory_ber_ncfsk(1.0) == doctest::Approx(0.30327).epsilon(1e-4));
    CHECK(theory_ber_ncfsk(10.0) == doctest::Approx(3.369e-3).epsilon(1e-3));
    CHECK_THROWS_AS(theory_ber_ncfsk(-0.1), std::invalid_argument);
}

TEST_CASE("theory curve is strictly decreasing and bounded") {
    double prev = 0.5 + 1e-12;
    for (double g = 0.0; g <= 30.0; g += 0.25) {
        const double p = theory_ber_ncfsk(g);
        CHECK(p > 0.0);
        CHECK(p <= 0.5);
        CHECK(p < prev);
        prev = p;
    }
}

TEST_CASE("rss curve over the receiver-distance grid") {
    RfSourceConfig src;
    BcGeometry g;
    std::vector<double> d;
    for (int i = 1; i <= 9; ++i) d.push_back(0.1 * i);
    const auto curve = theory_rss_curve(src, g, d);
    CHECK(curve.size() == 9);
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].second < curve[i - 1].second);
    // 1/d_rx^2 budget: 20*log10(9) dB between the end points
    CHECK(curve.front().second - curve.back().second ==
          doctest::Approx(20.0 * std::log10(9.0)).epsilon(1e-9));

    const auto single = theory_rss_curve(src, g, {0.5});
    BcGeometry g5 = g;
    g5.d_rx_bd = 0.5;
    CHECK(single[0].second == doctest::Approx(link_budget_rss(src, g5)));

    CHECK_THROWS_AS(theory_rss_curve(src, g, {}), std::invalid_argument);
}

TEST_CASE("sensitivity of a metric constant along one axis") {
    AxisSeries vlc{{0.2, 0.3, 0.4, 0.5}, {1.0, 1.0, 1.0, 1.0}};
    AxisSeries bc{{0.1, 0.2, 0.3}, {1.0, 2.0, 3.0}};
    const auto row = sensitivity(vlc, bc);
    CHECK(row.vlc_axis == doctest::Approx(0.0));
    CHECK(row.bc_axis == doctest::Approx(1.0));
    CHECK(row.vlc_axis + row.bc_axis == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sensitivity of a linear field with a 2:1 slope ratio") {
    // metric = a*d_vlc + b*d_bc with a = 2b -> shares (2/3, 1/3)
    const double b = 0.7, a = 1.4;
    AxisSeries vlc{{0.2, 0.3, 0.4, 0.5}, {}};
    for (double d : vlc.distances_m) vlc.values.push_back(a * d + b * 0.5);
    AxisSeries bc{{0.1, 0.3, 0.5, 0.7, 0.9}, {}};
    for (double d : bc.distances_m) bc.values.push_back(a * 0.3 + b * d);
    const auto row = sensitivity(vlc, bc);
    CHECK(row.vlc_axis == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(row.bc_axis == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("symmetric field splits sensitivity evenly") {
    AxisSeries vlc{{0.1, 0.2, 0.3}, {0.0, 1.0, 2.0}};
    AxisSeries bc{{0.1, 0.2, 0.3}, {5.0, 6.0, 7.0}};
    const auto row = sensitivity(vlc, bc);
    CHECK(row.vlc_axis == doctest::Approx(0.5));
    CHECK(row.bc_axis == doctest::Approx(0.5));
}

TEST_CASE("incomplete axes are rejected") {
    AxisSeries ok{{0.1, 0.2}, {1.0, 2.0}};
    AxisSeries bad{{0.1}, {1.0}};
    CHECK_THROWS_AS(sensitivity(ok, bad), std::invalid_argument);
    AxisSeries mismatched{{0.1, 0.2}, {1.0}};
    CHECK_THROWS_AS(sensitivity(mismatched, ok), std::invalid_argument);
}

TEST_CASE("ber log floor") {
    CHECK(ber_log10(0.0) == doctest::Approx(-6.0));
    CHECK(ber_log10(1e-9) == doctest::Approx(-6.0));
    CHECK(ber_log10(0.01) == doctest::Approx(-2.0));
}
