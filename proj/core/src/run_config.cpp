#include "vlcbc/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace vlcbc {

namespace {

double parse_double(const std::string& v) {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos]))) ++pos;
    if (pos != v.size()) throw std::invalid_argument("bad numeric value: " + v);
    return x;
}

std::vector<double> parse_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(parse_double(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty list value");
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

BitVector parse_bits(const std::string& v) {
    BitVector out;
    for (char c : v) {
        if (c == '0')
            out.push_back(0);
        else if (c == '1')
            out.push_back(1);
        else if (!std::isspace(static_cast<unsigned char>(c)))
            throw std::invalid_argument("bad bit pattern: " + v);
    }
    return out;
}

}  // namespace

RunConfig make_default_config() {
    RunConfig c;
    c.pv.electrical_noise_power = 0.0;
    // Two fixed 18-bit command patterns, alternating-bit words.
    c.codebook[1] = quantize_sensor(0x2AAAA, 18);
    c.codebook[2] = quantize_sensor(0x15555, 18);
    return c;
}

void RunConfig::validate() const {
    if (d_led_list.empty() || d_rx_list.empty() || p_tx_list.empty())
        throw std::invalid_argument("RunConfig: sweep axes must be nonempty");
    if (kinds.empty()) throw std::invalid_argument("RunConfig: no device kinds selected");
    if (frames_per_point < 1) throw std::invalid_argument("RunConfig: frames_per_point >= 1");
    vlc.validate();
    opt.validate();
    pv.validate();
    store.validate();
    power.validate();
    lpf.validate();
    if (lpf.cutoff >= vlc.f0)
        throw std::invalid_argument("RunConfig: harvester LPF cutoff must sit below f0");
    bc.validate();
    rf.validate();
    rx.validate();
    demod_config().validate();
    if (relay_pv_noise < 0.0 || control_pv_noise < 0.0)
        throw std::invalid_argument("RunConfig: PV noise powers must be >= 0");
    if (codebook.find(control_command) == codebook.end())
        throw std::invalid_argument("RunConfig: control_command missing from codebook");
    ambd_config(AmbdKind::VlcControl, d_led_fixed).validate();
}

DemodConfig RunConfig::demod_config() const {
    DemodConfig d;
    d.f0 = vlc.f0;
    d.f1 = vlc.f1;
    d.chip_duration = vlc.chip_duration;
    d.sync_threshold = sync_threshold;
    d.payload_len = payload_len;
    d.snr_cap_db = snr_cap_db;
    d.sync_search_span = sync_search_chips *
                         static_cast<std::size_t>(std::llround(vlc.chip_duration * rx.sample_rate));
    return d;
}

AmbdConfig RunConfig::ambd_config(AmbdKind kind, double d_led) const {
    AmbdConfig a;
    a.kind = kind;
    a.f0 = vlc.f0;
    a.f1 = vlc.f1;
    a.chip_duration = vlc.chip_duration;
    a.sample_rate = rx.sample_rate;
    a.payload_len = payload_len;
    a.comparator.threshold = 0.0;
    a.comparator.hysteresis = comparator_hysteresis_frac * pv_ac_amplitude(d_led);
    a.command_codebook = codebook;
    a.sensor_value = sensor_fixed;
    a.sync_threshold = sync_threshold;
    return a;
}

VlcGeometry RunConfig::geometry_at(double d_led) const {
    VlcGeometry g = opt;
    g.d_led_bd = d_led;
    return g;
}

BcGeometry RunConfig::bc_at(double d_rx) const {
    BcGeometry g = bc;
    g.d_rx_bd = d_rx;
    return g;
}

RfSourceConfig RunConfig::rf_at(double p_tx_dbm) const {
    RfSourceConfig s = rf;
    s.p_tx_dbm = p_tx_dbm;
    return s;
}

PvFrontEnd RunConfig::pv_for(AmbdKind kind) const {
    PvFrontEnd fe = pv;
    if (kind == AmbdKind::VlcRelay) fe.electrical_noise_power = relay_pv_noise;
    if (kind == AmbdKind::VlcControl) fe.electrical_noise_power = control_pv_noise;
    return fe;
}

double RunConfig::pv_ac_amplitude(double d_led) const {
    return vlc.optical_power_dc * vlc.modulation_index * lambertian_gain(geometry_at(d_led)) *
           pv.responsivity * pv.load_resistance;
}

double RunConfig::pv_dc_level(double d_led) const {
    return vlc.optical_power_dc * lambertian_gain(geometry_at(d_led)) * pv.responsivity *
           pv.load_resistance;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    auto d = [&] { return parse_double(v); };
    auto u64 = [&] { return static_cast<std::uint64_t>(std::stoull(v)); };

    if (key == "sweep.d_led_list") d_led_list = parse_list(v);
    else if (key == "sweep.d_rx_list") d_rx_list = parse_list(v);
    else if (key == "sweep.p_tx_list") p_tx_list = parse_list(v);
    else if (key == "sweep.frames_per_point") frames_per_point = static_cast<std::size_t>(u64());
    else if (key == "sweep.base_seed") base_seed = u64();
    else if (key == "sweep.d_led_fixed_m") d_led_fixed = d();
    else if (key == "sweep.d_rx_fixed_m") d_rx_fixed = d();
    else if (key == "sweep.p_tx_ref_dbm") p_tx_ref_dbm = d();
    else if (key == "sweep.bd_kinds") {
        kinds.clear();
        std::stringstream ss(v);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            const auto k = ambd_kind_from_name(trim(tok));
            if (!k) throw std::invalid_argument("unknown bd kind: " + tok);
            kinds.push_back(*k);
        }
    }
    else if (key == "vlc.f0_hz") vlc.f0 = d();
    else if (key == "vlc.f1_hz") vlc.f1 = d();
    else if (key == "vlc.chip_duration_s") vlc.chip_duration = d();
    else if (key == "vlc.sample_rate_hz") vlc.sample_rate = d();
    else if (key == "vlc.optical_power_dc_w") vlc.optical_power_dc = d();
    else if (key == "vlc.modulation_index") vlc.modulation_index = d();
    else if (key == "vlc.payload_len_bits") payload_len = static_cast<std::size_t>(u64());
    else if (key == "opt.lambertian_order") opt.lambertian_order = d();
    else if (key == "opt.detector_area_m2") opt.detector_area = d();
    else if (key == "opt.emit_angle_rad") opt.emit_angle = d();
    else if (key == "opt.incidence_angle_rad") opt.incidence_angle = d();
    else if (key == "opt.fov_half_angle_rad") opt.fov_half_angle = d();
    else if (key == "pv.responsivity_a_per_w") pv.responsivity = d();
    else if (key == "pv.load_resistance_ohm") pv.load_resistance = d();
    else if (key == "pv.conversion_efficiency") pv.conversion_efficiency = d();
    else if (key == "pv.relay_noise_power") relay_pv_noise = d();
    else if (key == "pv.control_noise_power") control_pv_noise = d();
    else if (key == "ambd.comparator_hysteresis_frac") comparator_hysteresis_frac = d();
    else if (key == "ambd.control_command") control_command = static_cast<int>(d());
    else if (key == "ambd.sensor_random") sensor_random = d() != 0.0;
    else if (key == "ambd.sensor_fixed") sensor_fixed = static_cast<std::uint32_t>(u64());
    else if (key.rfind("ambd.codebook.", 0) == 0) {
        const int id = std::stoi(key.substr(std::string("ambd.codebook.").size()));
        codebook[id] = parse_bits(v);
    }
    else if (key == "energy.capacitance_f") store.capacitance = d();
    else if (key == "energy.v_max") store.v_max = d();
    else if (key == "energy.v_min_operate") store.v_min_operate = d();
    else if (key == "energy.initial_voltage") store.voltage = d();
    else if (key == "energy.lpf_cutoff_hz") lpf.cutoff = d();
    else if (key == "energy.lpf_order") lpf.order = static_cast<int>(d());
    else if (key == "power.sleep_w") power.sleep = d();
    else if (key == "power.decode_w") power.decode = d();
    else if (key == "power.sense_w") power.sense = d();
    else if (key == "power.modulate_w") power.modulate = d();
    else if (key == "bc.d_tx_bd_m") bc.d_tx_bd = d();
    else if (key == "bc.wavelength_m") bc.wavelength = d();
    else if (key == "bc.g_tx") bc.g_tx = d();
    else if (key == "bc.g_bd") bc.g_bd = d();
    else if (key == "bc.g_rx") bc.g_rx = d();
    else if (key == "bc.mod_factor") bc.mod_factor = d();
    else if (key == "rf.frequency_hz") rf.frequency = d();
    else if (key == "rx.sample_rate_hz") rx.sample_rate = d();
    else if (key == "rx.noise_floor_dbm") rx.noise_floor_dbm = d();
    else if (key == "rx.d_tx_rx_m") rx.d_tx_rx = d();
    else if (key == "rx.direct_path_gain") rx.direct_path_gain = d();
    else if (key == "rx.carrier_freq_offset_hz") rx.carrier_freq_offset = d();
    else if (key == "rx.guard_chips") guard_chips = static_cast<std::size_t>(u64());
    else if (key == "demod.sync_threshold") sync_threshold = static_cast<int>(d());
    else if (key == "demod.sync_search_chips") sync_search_chips = static_cast<std::size_t>(u64());
    else if (key == "demod.snr_cap_db") snr_cap_db = d();
    else throw std::invalid_argument("unknown config key: " + key);
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    RunConfig cfg = make_default_config();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        try {
            cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
        } catch (const std::exception& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

RunConfig config_from_file_or_default(const std::string& path) {
    if (path.empty()) return make_default_config();
    return load_config_file(path);
}

}  // namespace vlcbc
