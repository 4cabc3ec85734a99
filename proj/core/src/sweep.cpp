#include "vlcbc/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <thread>

#include "vlcbc/sigcore.hpp"

namespace vlcbc {

namespace {

std::uint64_t quantize_coord(double x, double scale) {
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(std::llround(x * scale)));
}

}  // namespace

std::uint64_t point_seed(const RunConfig& cfg, const PointSpec& p) {
    return Rng::derive(cfg.base_seed,
                       {static_cast<std::uint64_t>(p.kind) + 1, quantize_coord(p.d_led, 1e6),
                        quantize_coord(p.d_rx, 1e6), quantize_coord(p.p_tx_dbm, 1e3)});
}

double unit_square_tone_energy(const RunConfig& cfg) {
    AmbdConfig a = cfg.ambd_config(AmbdKind::EhOnly, cfg.d_led_fixed);
    const std::size_t L =
        static_cast<std::size_t>(std::llround(cfg.vlc.chip_duration * cfg.rx.sample_rate));
    double acc = 0.0;
    for (int tone = 0; tone <= 1; ++tone) {
        // single-chip frame is not expressible; synthesize one chip directly
        SwitchWaveform sw;
        sw.sample_rate = cfg.rx.sample_rate;
        sw.states.resize(L);
        const double step = (tone ? a.f1 : a.f0) / a.sample_rate;
        double cycles = 0.0;
        for (std::size_t k = 0; k < L; ++k) {
            sw.states[k] = (cycles - std::floor(cycles)) < 0.5 ? 1 : 0;
            cycles += step;
        }
        RealWaveform w;
        w.sample_rate = sw.sample_rate;
        w.samples.resize(L);
        for (std::size_t k = 0; k < L; ++k) w.samples[k] = sw.states[k] ? -1.0 : 1.0;
        acc += tone_energy(w, tone ? a.f1 : a.f0, 0, L);
    }
    return acc / 2.0;
}

DeviceFrame device_frame(const RunConfig& cfg, AmbdKind kind, double d_led, Rng& frng,
                         EnergyStore& store) {
    DeviceFrame out;
    const AmbdConfig acfg = cfg.ambd_config(kind, d_led);
    const std::size_t L =
        static_cast<std::size_t>(std::llround(cfg.vlc.chip_duration * cfg.rx.sample_rate));
    const std::size_t frame_chips = (7 + cfg.payload_len) * 2;
    const std::size_t frame_samples = frame_chips * L;
    const double frame_s = static_cast<double>(frame_samples + cfg.guard_chips * L) /
                           cfg.rx.sample_rate;

    // Draw order is fixed per frame: payload/sensor bits first, then the
    // optical-link noise, so every stage is reproducible from the frame seed.
    FrameSpec spec;
    spec.payload_len = cfg.payload_len;

    BitVector local_payload;
    if (kind == AmbdKind::EhOnly || kind == AmbdKind::VlcRelay)
        local_payload = prbs_payload(frng, cfg.payload_len);
    std::uint32_t sensor = cfg.sensor_fixed;
    if (kind == AmbdKind::VlcControl && cfg.sensor_random)
        sensor = static_cast<std::uint32_t>(frng.next_u64() & ((1u << cfg.payload_len) - 1u));

    // Energy gate: analytic harvested power vs the active draw.
    const double dc = cfg.pv_dc_level(d_led);
    const double harvest = cfg.pv.conversion_efficiency * dc * dc / cfg.pv.load_resistance;
    double draw = cfg.power.modulate;
    if (kind == AmbdKind::VlcControl) draw += cfg.power.decode + cfg.power.sense;
    out.powered = device_powered(store);
    store = harvest_step(store, harvest, draw, frame_s);

    if (!out.powered) {
        out.sw = idle_switch(frame_samples, cfg.rx.sample_rate);
        out.reference = BitVector(cfg.payload_len, 0);
        out.responded = false;
        return out;
    }

    switch (kind) {
        case AmbdKind::EhOnly: {
            out.reference = local_payload;
            out.sw = eh_only_baseband(build_frame(spec, local_payload), acfg);
            break;
        }
        case AmbdKind::VlcRelay: {
            out.reference = local_payload;
            const ChipStream chips =
                manchester_encode(build_frame(spec, local_payload), cfg.vlc.chip_duration);
            const RealWaveform light = bfsk_intensity(chips, cfg.vlc);
            const RealWaveform pv =
                propagate_vlc(light, cfg.geometry_at(d_led), cfg.pv_for(kind), frng);
            const PvSplit split = pv_split(pv, cfg.lpf);
            out.sw = relay_baseband(split.ac, acfg);
            break;
        }
        case AmbdKind::VlcControl: {
            out.reference = quantize_sensor(sensor, cfg.payload_len);
            const BitVector cmd_payload = cfg.codebook.at(cfg.control_command);
            const ChipStream chips =
                manchester_encode(build_frame(spec, cmd_payload), cfg.vlc.chip_duration);
            const RealWaveform light = bfsk_intensity(chips, cfg.vlc);
            const RealWaveform pv =
                propagate_vlc(light, cfg.geometry_at(d_led), cfg.pv_for(kind), frng);
            const auto cmd = control_decode(pv, acfg);
            out.responded = cmd.has_value() && *cmd == cfg.control_command;
            if (out.responded) {
                AmbdConfig rcfg = acfg;
                rcfg.sensor_value = sensor;
                out.sw = control_respond(*cmd, rcfg);
            } else {
                out.sw = idle_switch(frame_samples, cfg.rx.sample_rate);
            }
            break;
        }
    }
    return out;
}

MetricRecord run_point(const RunConfig& cfg, const PointSpec& p) {
    cfg.validate();
    MetricRecord rec;
    rec.kind = p.kind;
    rec.d_led = p.d_led;
    rec.d_rx = p.d_rx;
    rec.p_tx_dbm = p.p_tx_dbm;
    rec.seed = point_seed(cfg, p);
    rec.n_frames = cfg.frames_per_point;
    rec.n_bits = cfg.frames_per_point * cfg.payload_len;

    const DemodConfig dcfg = cfg.demod_config();
    const RfSourceConfig src = cfg.rf_at(p.p_tx_dbm);
    const BcGeometry geom = cfg.bc_at(p.d_rx);
    const RxFrontEndConfig& fe = cfg.rx;
    const std::size_t L = dcfg.chip_samples(fe.sample_rate);
    const std::size_t guard_len = cfg.guard_chips * L;
    const ReflectionPair refl;

    rec.rss_theory_dbm = link_budget_rss(src, geom);

    // Injected per-chip SNR: noiseless winning-bin tone energy over the
    // per-bin noise energy, both in tone_energy units.
    const double e_unit = unit_square_tone_energy(cfg);
    const double a_bs2 = dbm_to_watt(rec.rss_theory_dbm);
    const double sigma2 = fe.noise_power_watt();
    rec.snr_db_injected = sigma2 > 0.0
                              ? std::min(linear_to_db(a_bs2 * e_unit / sigma2), cfg.snr_cap_db)
                              : cfg.snr_cap_db;

    EnergyStore store = cfg.store;
    std::size_t errors = 0, detected = 0;
    double snr_linear_acc = 0.0, rss_w_acc = 0.0;

    for (std::size_t f = 0; f < cfg.frames_per_point; ++f) {
        Rng frng(Rng::derive(rec.seed, {f}));
        DeviceFrame df = device_frame(cfg, p.kind, p.d_led, frng, store);

        // trailing silent guard for the noise estimate
        df.sw.states.resize(df.sw.states.size() + guard_len, 0);
        const ComplexWaveform gamma = apply_reflection(df.sw, refl);
        const ComplexWaveform capture = backscatter_capture(gamma, src, geom, fe, frng);

        const DemodResult res = demod_frame(capture, dcfg, guard_len, fe.noise_floor_dbm);
        if (res.payload) {
            ++detected;
            errors += static_cast<std::size_t>(
                std::llround(ber(df.reference, *res.payload) * cfg.payload_len));
            snr_linear_acc += db_to_linear(res.snr_db);
        } else {
            errors += cfg.payload_len;  // undetected frames count all bits wrong
        }
        rss_w_acc += dbm_to_watt(res.rss_dbm);
    }

    rec.ber = static_cast<double>(errors) / static_cast<double>(rec.n_bits);
    rec.frame_detect_rate =
        static_cast<double>(detected) / static_cast<double>(cfg.frames_per_point);
    rec.snr_db = detected
                     ? linear_to_db(snr_linear_acc / static_cast<double>(detected))
                     : -cfg.snr_cap_db;
    rec.rss_dbm = watt_to_dbm(rss_w_acc / static_cast<double>(cfg.frames_per_point));
    return rec;
}

std::vector<PointSpec> sweep_points(const RunConfig& cfg) {
    std::vector<PointSpec> pts;
    for (AmbdKind k : cfg.kinds) {
        for (double d_led : cfg.d_led_list)
            for (double p_tx : cfg.p_tx_list)
                pts.push_back({k, d_led, cfg.d_rx_fixed, p_tx});
        for (double d_rx : cfg.d_rx_list)
            for (double p_tx : cfg.p_tx_list)
                pts.push_back({k, cfg.d_led_fixed, d_rx, p_tx});
    }
    return pts;
}

std::string csv_header() {
    return "bd_kind,d_led_bd_m,d_rx_bd_m,p_tx_dbm,snr_db,snr_db_injected,ber,"
           "frame_detect_rate,rss_dbm,rss_theory_dbm,n_bits,n_frames,seed";
}

std::string csv_line(const MetricRecord& r) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%s,%.4g,%.4g,%.4g,%.6f,%.6f,%.10g,%.10g,%.6f,%.6f,%zu,%zu,%llu",
                  ambd_kind_name(r.kind), r.d_led, r.d_rx, r.p_tx_dbm, r.snr_db,
                  r.snr_db_injected, r.ber, r.frame_detect_rate, r.rss_dbm, r.rss_theory_dbm,
                  r.n_bits, r.n_frames, static_cast<unsigned long long>(r.seed));
    return buf;
}

std::vector<MetricRecord> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
    if (line != csv_header()) throw std::runtime_error("unexpected CSV header in " + path);
    std::vector<MetricRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        MetricRecord r;
        char kind[32];
        unsigned long long nbits = 0, nframes = 0, seed = 0;
        const int got = std::sscanf(line.c_str(), "%31[^,],%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%llu,%llu,%llu",
                                    kind, &r.d_led, &r.d_rx, &r.p_tx_dbm, &r.snr_db,
                                    &r.snr_db_injected, &r.ber, &r.frame_detect_rate, &r.rss_dbm,
                                    &r.rss_theory_dbm, &nbits, &nframes, &seed);
        if (got != 13) throw std::runtime_error("bad CSV row: " + line);
        const auto k = ambd_kind_from_name(kind);
        if (!k) throw std::runtime_error("bad bd_kind in CSV: " + std::string(kind));
        r.kind = *k;
        r.n_bits = nbits;
        r.n_frames = nframes;
        r.seed = seed;
        out.push_back(r);
    }
    return out;
}

namespace {
std::string row_key(const PointSpec& p) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s,%.4g,%.4g,%.4g", ambd_kind_name(p.kind), p.d_led, p.d_rx,
                  p.p_tx_dbm);
    return buf;
}
std::string row_key(const MetricRecord& r) {
    return row_key(PointSpec{r.kind, r.d_led, r.d_rx, r.p_tx_dbm});
}
}  // namespace

std::vector<MetricRecord> run_sweep(const RunConfig& cfg, const std::string& csv_path,
                                    int workers, bool resume) {
    cfg.validate();
    const std::vector<PointSpec> pts = sweep_points(cfg);

    std::map<std::string, MetricRecord> existing;
    if (resume) {
        std::ifstream probe(csv_path);
        if (probe.good()) {
            probe.close();
            for (const auto& r : read_csv(csv_path)) existing[row_key(r)] = r;
        }
    }

    std::vector<MetricRecord> records(pts.size());
    std::vector<char> have(pts.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto it = existing.find(row_key(pts[i]));
        if (it != existing.end()) {
            records[i] = it->second;
            have[i] = 1;
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pts.size()) return;
            if (!have[i]) records[i] = run_point(cfg, pts[i]);
        }
    };
    const int n_threads = std::max(1, workers);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write CSV: " + csv_path);
        out << csv_header() << '\n';
        for (const auto& r : records) out << csv_line(r) << '\n';
        if (!out) throw std::runtime_error("write failed: " + csv_path);
    }
    return records;
}

namespace {

struct Series {
    std::vector<double> x;       // distance
    std::vector<double> ber;     // measured
    std::vector<double> rss;     // dBm
    std::vector<double> rss_th;  // dBm
    std::vector<std::size_t> n_bits;
};

Series slice(const std::vector<MetricRecord>& recs, AmbdKind kind, bool vlc_axis,
             const RunConfig& cfg) {
    std::map<double, MetricRecord> by_d;
    for (const auto& r : recs) {
        if (r.kind != kind) continue;
        if (std::abs(r.p_tx_dbm - cfg.p_tx_ref_dbm) > 1e-9) continue;
        if (vlc_axis) {
            if (std::abs(r.d_rx - cfg.d_rx_fixed) > 1e-9) continue;
            by_d[r.d_led] = r;
        } else {
            if (std::abs(r.d_led - cfg.d_led_fixed) > 1e-9) continue;
            by_d[r.d_rx] = r;
        }
    }
    Series s;
    for (const auto& [d, r] : by_d) {
        s.x.push_back(d);
        s.ber.push_back(r.ber);
        s.rss.push_back(r.rss_dbm);
        s.rss_th.push_back(r.rss_theory_dbm);
        s.n_bits.push_back(r.n_bits);
    }
    return s;
}

double fit_slope_db_per_decade(const std::vector<double>& d, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double x = std::log10(d[i]);
        sx += x;
        sy += y[i];
        sxx += x * x;
        sxy += x * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool monotone_nondecreasing_with_ci(const std::vector<double>& ber,
                                    const std::vector<std::size_t>& n_bits) {
    for (std::size_t i = 1; i < ber.size(); ++i) {
        if (ber[i] + 1e-15 >= ber[i - 1]) continue;
        // allow statistically insignificant dips: 3-sigma binomial intervals
        const double p = (ber[i] + ber[i - 1]) / 2.0;
        const double s_prev = 3.0 * std::sqrt(std::max(p * (1 - p), 1e-12) /
                                              static_cast<double>(n_bits[i - 1]));
        const double s_cur = 3.0 * std::sqrt(std::max(p * (1 - p), 1e-12) /
                                             static_cast<double>(n_bits[i]));
        if (ber[i - 1] - s_prev > ber[i] + s_cur) return false;
    }
    return true;
}

}  // namespace

SweepReport build_report(const std::vector<MetricRecord>& records, const RunConfig& cfg) {
    SweepReport rep;
    std::string text;
    char buf[256];

    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.push_back({name, pass, detail});
        rep.all_pass = rep.all_pass && pass;
    };

    std::vector<AmbdKind> kinds_present;
    for (AmbdKind k : cfg.kinds) kinds_present.push_back(k);

    text += "normalized sensitivity (per device, per metric; pair sums to 1)\n";
    text += "kind      metric  vlc_axis  bc_axis\n";

    for (AmbdKind k : kinds_present) {
        const Series sv = slice(records, k, true, cfg);
        const Series sb = slice(records, k, false, cfg);
        const std::string kn = ambd_kind_name(k);
        if (sv.x.size() < 2 || sb.x.size() < 2) {
            add("grid." + kn, false, "incomplete distance slices");
            continue;
        }

        // distance trends
        double bmin = 1e9, bmax = -1e9;
        for (double b : sv.ber) {
            bmin = std::min(bmin, std::max(b, 1e-6));
            bmax = std::max(bmax, std::max(b, 1e-6));
        }
        const double ratio = bmax / bmin;
        std::snprintf(buf, sizeof(buf), "max/min = %.2f over d_led", ratio);
        add("ber_stability." + kn, ratio < 10.0, buf);

        add("ber_trend." + kn, monotone_nondecreasing_with_ci(sb.ber, sb.n_bits),
            "BER non-decreasing in d_rx (3-sigma overlap allowed)");

        const double slope = fit_slope_db_per_decade(sb.x, sb.rss);
        std::snprintf(buf, sizeof(buf), "slope = %.3f dB/decade", slope);
        add("rss_slope." + kn, std::abs(slope + 20.0) < 0.5, buf);

        double rss_err = 0.0;
        for (std::size_t i = 0; i < sb.x.size(); ++i)
            rss_err += std::abs(sb.rss[i] - sb.rss_th[i]);
        rss_err /= static_cast<double>(sb.x.size());
        std::snprintf(buf, sizeof(buf), "mean |measured-theory| = %.3f dB", rss_err);
        add("rss_budget." + kn, rss_err < 0.5, buf);

        // sensitivity
        AxisSeries ber_v{sv.x, {}}, ber_b{sb.x, {}}, rss_v{sv.x, {}}, rss_b{sb.x, {}};
        for (double b : sv.ber) ber_v.values.push_back(ber_log10(b));
        for (double b : sb.ber) ber_b.values.push_back(ber_log10(b));
        rss_v.values = sv.rss;
        rss_b.values = sb.rss;
        const SensitivityRow srow_ber = sensitivity(ber_v, ber_b);
        const SensitivityRow srow_rss = sensitivity(rss_v, rss_b);

        std::snprintf(buf, sizeof(buf), "%-9s BER     %.4f    %.4f\n", kn.c_str(),
                      srow_ber.vlc_axis, srow_ber.bc_axis);
        text += buf;
        std::snprintf(buf, sizeof(buf), "%-9s RSS     %.4f    %.4f\n", kn.c_str(),
                      srow_rss.vlc_axis, srow_rss.bc_axis);
        text += buf;

        std::snprintf(buf, sizeof(buf), "BER vlc-axis share = %.4f", srow_ber.vlc_axis);
        if (k == AmbdKind::VlcRelay)
            add("sens_ber_vlc_dominant." + kn, srow_ber.vlc_axis > 0.5, buf);
        else
            add("sens_ber_bc_dominant." + kn, srow_ber.bc_axis > 0.5, buf);
        std::snprintf(buf, sizeof(buf), "RSS bc-axis share = %.4f", srow_rss.bc_axis);
        add("sens_rss_bc_dominant." + kn, srow_rss.bc_axis > 0.9, buf);
    }

    rep.text = text;
    return rep;
}

}  // namespace vlcbc
