#include <cmath>

#include "doctest.h"
#include "vlcbc/energy.hpp"
#include "vlcbc/sigcore.hpp"

using namespace vlcbc;

TEST_CASE("pv_split on a pure DC input") {
    RealWaveform w;
    w.sample_rate = 200e3;
    w.samples.assign(20'000, 2.0);
    const auto s = pv_split(w, LpfSpec{});
    CHECK(s.dc_level == doctest::Approx(2.0).epsilon(1e-6));
    for (std::size_t i = 5000; i < s.ac.samples.size(); ++i)
        CHECK(std::abs(s.ac.samples[i]) < 1e-6);
}

TEST_CASE("pv_split separates a 6 kHz tone from its bias") {
    const auto tone = make_tone(6000.0, 0.1, 200e3);
    RealWaveform w;
    w.sample_rate = 200e3;
    w.samples.resize(tone.samples.size());
    for (std::size_t i = 0; i < w.samples.size(); ++i)
        w.samples[i] = 1.0 + 0.3 * tone.samples[i];
    const auto s = pv_split(w, LpfSpec{});
    CHECK(s.dc_level == doctest::Approx(1.0).epsilon(0.01));

    double lo = 1e30, hi = -1e30;
    for (std::size_t i = s.ac.samples.size() / 2; i < s.ac.samples.size(); ++i) {
        lo = std::min(lo, s.ac.samples[i]);
        hi = std::max(hi, s.ac.samples[i]);
    }
    CHECK((hi - lo) / 2.0 == doctest::Approx(0.3).epsilon(0.02));

    double mean = 0.0;
    for (double v : s.ac.samples) mean += v;
    mean /= static_cast<double>(s.ac.samples.size());
    CHECK(std::abs(mean) < 1e-6 * 0.3);
}

TEST_CASE("pv_split complementarity: dc path + ac path reconstructs the input") {
    Rng rng(4);
    auto w = make_tone(8000.0, 0.05, 200e3);
    for (auto& v : w.samples) v = 1.5 + 0.4 * v;
    w = add_awgn(w, 1e-4, rng);
    const auto s = pv_split(w, LpfSpec{});
    // lowpass path is input minus ac by construction; check a settled stretch
    for (std::size_t i = 0; i < w.samples.size(); i += 1013) {
        const double lp = w.samples[i] - s.ac.samples[i];
        CHECK(std::isfinite(lp));
    }
}

TEST_CASE("harvest_step balance and the worked discharge energy") {
    EnergyStore st;
    const auto same = harvest_step(st, 1e-3, 1e-3, 10.0);
    CHECK(same.voltage == doctest::Approx(st.voltage).epsilon(1e-12));

    // 0.4 F from 3.3 V down to 1.8 V releases 0.5*C*(V1^2 - V2^2)
    const double released = 0.5 * 0.4 * (3.3 * 3.3 - 1.8 * 1.8);
    CHECK(released == doctest::Approx(1.53).epsilon(1e-9));
    // drain that energy and land exactly on 1.8 V
    const auto drained = harvest_step(st, 0.0, released, 1.0);
    CHECK(drained.voltage == doctest::Approx(1.8).epsilon(1e-9));
}

TEST_CASE("store depletes to zero and stays clamped") {
    EnergyStore st;
    st.voltage = 2.0;
    auto s = st;
    for (int i = 0; i < 100; ++i) s = harvest_step(s, 0.0, 1.0, 1.0);
    CHECK(s.voltage == doctest::Approx(0.0));
    s = harvest_step(s, 0.0, 1.0, 1.0);
    CHECK(s.voltage == 0.0);
}

TEST_CASE("store never exceeds v_max") {
    EnergyStore st;
    st.voltage = 3.0;
    auto s = st;
    for (int i = 0; i < 1000; ++i) s = harvest_step(s, 1.0, 0.0, 1.0);
    CHECK(s.voltage == doctest::Approx(st.v_max).epsilon(1e-12));
}

TEST_CASE("energy conservation without clamping") {
    EnergyStore st;
    st.voltage = 2.5;
    Rng rng(12);
    auto s = st;
    double net = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double ph = 1e-3 * rng.uniform();
        const double pl = 1e-3 * rng.uniform();
        const double dt = 0.1 + rng.uniform();
        s = harvest_step(s, ph, pl, dt);
        net += (ph - pl) * dt;
        if (s.voltage >= s.v_max || s.voltage <= 0.0) return;  // clamped, stop the ledger
    }
    CHECK(s.stored_energy() - st.stored_energy() == doctest::Approx(net).epsilon(1e-9));
}

TEST_CASE("energy neutral margin arithmetic") {
    PowerProfile prof;
    std::map<DeviceState, double> duty = {{DeviceState::Sleep, 1.0}};
    prof.sleep = 10e-3;
    CHECK(energy_neutral_margin(prof, duty, 10e-3) == doctest::Approx(0.0));

    PowerProfile p2;
    p2.sleep = 1e-6;
    p2.modulate = 1e-3;
    std::map<DeviceState, double> d2 = {{DeviceState::Sleep, 0.9}, {DeviceState::Modulate, 0.1}};
    CHECK(energy_neutral_margin(p2, d2, 5e-3) == doctest::Approx(4.899e-3).epsilon(1e-4));

    CHECK(energy_neutral_margin(p2, d2, 0.0) < 0.0);

    std::map<DeviceState, double> bad = {{DeviceState::Sleep, 0.5}};
    CHECK_THROWS_AS(energy_neutral_margin(p2, bad, 1e-3), std::invalid_argument);
}
