#include <cmath>

#include "doctest.h"
#include "vlcbc/ambd.hpp"
#include "vlcbc/bc_link.hpp"
#include "vlcbc/rx_demod.hpp"

using namespace vlcbc;

TEST_CASE("link budget worked value") {
    RfSourceConfig src;
    src.p_tx_dbm = 0.0;
    BcGeometry g;
    g.wavelength = 0.125;
    g.d_tx_bd = 0.5;
    g.d_rx_bd = 0.5;
    CHECK(link_budget_rss(src, g) == doctest::Approx(-68.05).epsilon(1e-4));
}

TEST_CASE("doubling the receiver distance costs 6.02 dB") {
    RfSourceConfig src;
    BcGeometry g;
    const double a = link_budget_rss(src, g);
    g.d_rx_bd *= 2.0;
    CHECK(a - link_budget_rss(src, g) == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-9));
}

TEST_CASE("budget is linear in source power") {
    RfSourceConfig src;
    BcGeometry g;
    const double a = link_budget_rss(src, g);
    src.p_tx_dbm += 5.0;
    CHECK(link_budget_rss(src, g) == doctest::Approx(a + 5.0).epsilon(1e-9));
}

TEST_CASE("budget is symmetric in the two hop distances") {
    RfSourceConfig src;
    BcGeometry g;
    g.d_tx_bd = 0.3;
    g.d_rx_bd = 0.8;
    const double a = link_budget_rss(src, g);
    std::swap(g.d_tx_bd, g.d_rx_bd);
    CHECK(link_budget_rss(src, g) == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("constant gamma with no noise gives a constant capture") {
    SwitchWaveform sw;
    sw.sample_rate = 200e3;
    sw.states.assign(500, 0);
    const auto gamma = apply_reflection(sw, ReflectionPair{});
    RfSourceConfig src;
    BcGeometry g;
    RxFrontEndConfig fe;
    fe.noise_floor_dbm = -std::numeric_limits<double>::infinity();
    Rng rng(3);
    const auto y = backscatter_capture(gamma, src, g, fe, rng);
    for (const auto& v : y.samples) CHECK(std::abs(v - y.samples[0]) < 1e-15);
}

TEST_CASE("same seed reproduces the capture bit for bit") {
    SwitchWaveform sw;
    sw.sample_rate = 200e3;
    sw.states.assign(400, 0);
    for (std::size_t i = 0; i < sw.states.size(); i += 2) sw.states[i] = 1;
    const auto gamma = apply_reflection(sw, ReflectionPair{});
    RfSourceConfig src;
    BcGeometry g;
    RxFrontEndConfig fe;
    Rng r1(77), r2(77);
    const auto a = backscatter_capture(gamma, src, g, fe, r1);
    const auto b = backscatter_capture(gamma, src, g, fe, r2);
    CHECK(a.samples == b.samples);
}

TEST_CASE("sample-rate mismatch is rejected") {
    SwitchWaveform sw;
    sw.sample_rate = 100e3;
    sw.states.assign(100, 0);
    const auto gamma = apply_reflection(sw, ReflectionPair{});
    RfSourceConfig src;
    BcGeometry g;
    RxFrontEndConfig fe;  // 200 kHz
    Rng rng(1);
    CHECK_THROWS_AS(backscatter_capture(gamma, src, g, fe, rng), std::invalid_argument);
}

TEST_CASE("noiseless sideband power reproduces the budget (calibration identity)") {
    AmbdConfig acfg;
    acfg.kind = AmbdKind::EhOnly;
    Rng brng(9);
    FrameSpec spec;
    const auto frame = build_frame(spec, prbs_payload(brng, 18));
    const auto sw = eh_only_baseband(frame, acfg);
    const auto gamma = apply_reflection(sw, ReflectionPair{});

    RxFrontEndConfig fe;
    fe.noise_floor_dbm = -std::numeric_limits<double>::infinity();

    for (double p_tx : {-25.0, 0.0, 25.0}) {
        for (double d_rx : {0.1, 0.5, 0.9}) {
            RfSourceConfig src;
            src.p_tx_dbm = p_tx;
            BcGeometry g;
            g.d_rx_bd = d_rx;
            Rng rng(1234);
            const auto y = backscatter_capture(gamma, src, g, fe, rng);
            const double rss =
                measure_rss(y, 0, y.samples.size(), 0, 0, fe.noise_floor_dbm);
            CHECK(std::abs(rss - link_budget_rss(src, g)) < 0.05);
        }
    }
}

TEST_CASE("direct path dominates the backscatter component at defaults") {
    RfSourceConfig src;
    BcGeometry g;  // d_rx_bd = 0.5
    RxFrontEndConfig fe;
    const double p_bs_dbm = link_budget_rss(src, g);
    const double p_dp_dbm = watt_to_dbm(dbm_to_watt(src.p_tx_dbm) * direct_path_gain(src, g, fe));
    CHECK(p_dp_dbm - p_bs_dbm >= 30.0);
}
