#include "vlcbc/rx_demod.hpp"

#include <cmath>

#include "vlcbc/sigcore.hpp"

namespace vlcbc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Twiddle {
    std::vector<cplx> t;
    explicit Twiddle(double freq, double fs, std::size_t len) : t(len) {
        for (std::size_t k = 0; k < len; ++k) {
            const double a = -kTwoPi * freq * static_cast<double>(k) / fs;
            t[k] = cplx(std::cos(a), std::sin(a));
        }
    }
};

inline cplx correlate(const cplx* w, const Twiddle& tw, std::size_t len) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
        const cplx p = w[k] * tw.t[k];
        re += p.real();
        im += p.imag();
    }
    return {re, im};
}

inline cplx correlate(const double* w, const Twiddle& tw, std::size_t len) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
        re += w[k] * tw.t[k].real();
        im += w[k] * tw.t[k].imag();
    }
    return {re, im};
}

// Decision statistic: analytic (+f) bins only. Two-sided energies reported.
template <typename Sample>
std::vector<ChipDecision> detect_impl(const std::vector<Sample>& s, double fs,
                                      const DemodConfig& cfg, std::size_t frame_start,
                                      std::size_t n_chips) {
    cfg.validate();
    const std::size_t L = cfg.chip_samples(fs);
    if (L == 0) throw std::invalid_argument("fsk_chip_detect: chip shorter than one sample");
    if (frame_start + n_chips * L > s.size())
        throw std::out_of_range("fsk_chip_detect: span outside capture");

    const Twiddle tw0(cfg.f0, fs, L), tw1(cfg.f1, fs, L);
    const bool complex_input = std::is_same_v<Sample, cplx>;
    // For real input the -f image mirrors the +f bin exactly.
    std::optional<Twiddle> tw0n, tw1n;
    if (complex_input) {
        tw0n.emplace(-cfg.f0, fs, L);
        tw1n.emplace(-cfg.f1, fs, L);
    }

    std::vector<ChipDecision> out(n_chips);
    const double dl = static_cast<double>(L);
    for (std::size_t c = 0; c < n_chips; ++c) {
        const Sample* w = s.data() + frame_start + c * L;
        const double ep0 = std::norm(correlate(w, tw0, L)) / dl;
        const double ep1 = std::norm(correlate(w, tw1, L)) / dl;
        double en0 = ep0, en1 = ep1;
        if (complex_input) {
            en0 = std::norm(correlate(w, *tw0n, L)) / dl;
            en1 = std::norm(correlate(w, *tw1n, L)) / dl;
        }
        out[c].value = (ep1 > ep0) ? 1 : 0;  // tie resolves to chip 0
        out[c].e0 = ep0 + en0;
        out[c].e1 = ep1 + en1;
    }
    return out;
}

// Decision-only variant for the sync scan (skips the image bins).
template <typename Sample>
void detect_hard(const std::vector<Sample>& s, std::size_t start, std::size_t L,
                 const Twiddle& tw0, const Twiddle& tw1, std::size_t n_chips,
                 std::vector<std::uint8_t>& out) {
    out.resize(n_chips);
    for (std::size_t c = 0; c < n_chips; ++c) {
        const Sample* w = s.data() + start + c * L;
        const double e0 = std::norm(correlate(w, tw0, L));
        const double e1 = std::norm(correlate(w, tw1, L));
        out[c] = (e1 > e0) ? 1 : 0;
    }
}

template <typename Sample>
std::optional<std::size_t> sync_impl(const std::vector<Sample>& s, double fs,
                                     const DemodConfig& cfg) {
    cfg.validate();
    const std::size_t L = cfg.chip_samples(fs);
    const std::size_t preamble_samples = 14 * L;
    if (L == 0 || s.size() < preamble_samples) return std::nullopt;

    const std::size_t step = std::max<std::size_t>(1, L / 4);
    std::size_t last = s.size() - preamble_samples;
    if (cfg.sync_search_span > 0) last = std::min(last, cfg.sync_search_span);

    const Twiddle tw0(cfg.f0, fs, L), tw1(cfg.f1, fs, L);
    const BitVector& tpl = barker7();
    std::vector<std::uint8_t> chips;
    for (std::size_t off = 0;; off += step) {
        detect_hard(s, off, L, tw0, tw1, 14, chips);
        const BitVector bits = manchester_decode(chips);
        int score = 0;
        for (std::size_t i = 0; i < 7; ++i) score += (bits[i] == tpl[i]) ? 1 : -1;
        if (score >= cfg.sync_threshold) return off;
        if (off >= last) break;
    }
    return std::nullopt;
}

}  // namespace

ComplexWaveform remove_direct_path(const ComplexWaveform& y) {
    ComplexWaveform out = y;
    if (y.samples.empty()) return out;
    cplx mean(0.0, 0.0);
    for (const auto& v : y.samples) mean += v;
    mean /= static_cast<double>(y.samples.size());
    for (auto& v : out.samples) v -= mean;
    return out;
}

std::vector<ChipDecision> fsk_chip_detect(const ComplexWaveform& y, const DemodConfig& cfg,
                                          std::size_t frame_start, std::size_t n_chips) {
    return detect_impl(y.samples, y.sample_rate, cfg, frame_start, n_chips);
}

std::vector<ChipDecision> fsk_chip_detect(const RealWaveform& y, const DemodConfig& cfg,
                                          std::size_t frame_start, std::size_t n_chips) {
    return detect_impl(y.samples, y.sample_rate, cfg, frame_start, n_chips);
}

std::optional<std::size_t> sync_barker(const ComplexWaveform& y, const DemodConfig& cfg) {
    return sync_impl(y.samples, y.sample_rate, cfg);
}

std::optional<std::size_t> sync_barker(const RealWaveform& y, const DemodConfig& cfg) {
    return sync_impl(y.samples, y.sample_rate, cfg);
}

BitVector manchester_decode(const std::vector<std::uint8_t>& chips) {
    if (chips.size() % 2 != 0)
        throw std::invalid_argument("manchester_decode: odd-length chip stream");
    BitVector out(chips.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        // {1,0}->1, {0,1}->0; invalid pairs take the first chip of the pair.
        out[i] = chips[2 * i];
    }
    return out;
}

BitVector manchester_decode(const std::vector<ChipDecision>& chips) {
    std::vector<std::uint8_t> hard(chips.size());
    for (std::size_t i = 0; i < chips.size(); ++i)
        hard[i] = static_cast<std::uint8_t>(chips[i].value);
    return manchester_decode(hard);
}

double measure_snr(const std::vector<ChipDecision>& chips, const DemodConfig& cfg) {
    if (chips.empty()) throw std::invalid_argument("measure_snr: no chips");
    double win = 0.0, lose = 0.0;
    for (const auto& c : chips) {
        win += std::max(c.e0, c.e1);
        lose += std::min(c.e0, c.e1);
    }
    win /= static_cast<double>(chips.size());
    lose /= static_cast<double>(chips.size());
    if (lose <= 0.0) return cfg.snr_cap_db;
    const double snr = (win - lose) / lose;
    if (snr <= 0.0) return -cfg.snr_cap_db;
    return std::min(std::max(linear_to_db(snr), -cfg.snr_cap_db), cfg.snr_cap_db);
}

double measure_rss(const ComplexWaveform& y, std::size_t frame_start, std::size_t frame_len,
                   std::size_t guard_start, std::size_t guard_len, double noise_floor_dbm) {
    if (frame_len == 0 || frame_start + frame_len > y.samples.size())
        throw std::out_of_range("measure_rss: frame span outside capture");
    if (guard_len > 0 && guard_start + guard_len > y.samples.size())
        throw std::out_of_range("measure_rss: guard span outside capture");

    auto span_power = [&](std::size_t start, std::size_t len) {
        cplx mean(0.0, 0.0);
        for (std::size_t i = 0; i < len; ++i) mean += y.samples[start + i];
        mean /= static_cast<double>(len);
        double p = 0.0;
        for (std::size_t i = 0; i < len; ++i) p += std::norm(y.samples[start + i] - mean);
        return p / static_cast<double>(len);
    };

    const double p_frame = span_power(frame_start, frame_len);
    const double p_noise = guard_len > 0 ? span_power(guard_start, guard_len) : 0.0;
    const double floor_w =
        (std::isinf(noise_floor_dbm) && noise_floor_dbm < 0.0) ? 1e-30 : dbm_to_watt(noise_floor_dbm);
    const double rss_w = std::max(p_frame - p_noise, floor_w);
    return watt_to_dbm(rss_w);
}

double ber(const BitVector& reference, const BitVector& decoded) {
    if (reference.size() != decoded.size())
        throw std::invalid_argument("ber: length mismatch");
    if (reference.empty()) throw std::invalid_argument("ber: empty vectors");
    std::size_t errs = 0;
    for (std::size_t i = 0; i < reference.size(); ++i)
        if (reference[i] != decoded[i]) ++errs;
    return static_cast<double>(errs) / static_cast<double>(reference.size());
}

DemodResult demod_frame(const ComplexWaveform& capture, const DemodConfig& cfg,
                        std::size_t guard_len, double noise_floor_dbm) {
    cfg.validate();
    DemodResult r;
    const std::size_t L = cfg.chip_samples(capture.sample_rate);
    const std::size_t frame_len = cfg.frame_chips() * L;
    if (capture.samples.size() < frame_len) return r;

    const ComplexWaveform flat = remove_direct_path(capture);
    const std::size_t guard_start = capture.samples.size() - guard_len;

    r.sync_offset = sync_barker(flat, cfg);
    const std::size_t rss_start = r.sync_offset.value_or(0);
    if (rss_start + frame_len <= capture.samples.size())
        r.rss_dbm = measure_rss(capture, rss_start, frame_len, guard_start, guard_len,
                                noise_floor_dbm);
    else
        r.rss_dbm = measure_rss(capture, 0, frame_len, guard_start, guard_len, noise_floor_dbm);

    if (!r.sync_offset || *r.sync_offset + frame_len > flat.samples.size()) {
        r.snr_db = -cfg.snr_cap_db;
        return r;
    }
    r.chips = fsk_chip_detect(flat, cfg, *r.sync_offset, cfg.frame_chips());
    const BitVector bits = manchester_decode(r.chips);
    r.payload = BitVector(bits.begin() + 7, bits.end());
    r.snr_db = measure_snr(r.chips, cfg);
    return r;
}

}  // namespace vlcbc
