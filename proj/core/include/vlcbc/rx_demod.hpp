#pragma once

#include <optional>

#include "vlcbc/vlc_tx.hpp"
#include "vlcbc/waveform.hpp"

namespace vlcbc {

struct DemodConfig {
    double f0 = 6000.0;
    double f1 = 8000.0;
    double chip_duration = 5e-4;     // s
    int sync_threshold = 6;          // of 7 preamble bits
    std::size_t payload_len = 18;
    double snr_cap_db = 60.0;
    std::size_t sync_search_span = 0;  // samples; 0 means the whole capture

    void validate() const {
        if (f0 <= 0.0 || f1 <= f0) throw std::invalid_argument("DemodConfig: need 0 < f0 < f1");
        if (chip_duration <= 0.0) throw std::invalid_argument("DemodConfig: chip_duration > 0");
        if (sync_threshold < 4 || sync_threshold > 7)
            throw std::invalid_argument("DemodConfig: sync_threshold must lie in [4,7]");
        if (payload_len < 1) throw std::invalid_argument("DemodConfig: payload_len >= 1");
    }
    std::size_t chip_samples(double fs) const {
        return static_cast<std::size_t>(chip_duration * fs + 0.5);
    }
    std::size_t frame_chips() const { return (7 + payload_len) * 2; }
};

/// Per-chip decision with two-sided (image-summed) soft energies. The hard
/// decision compares the analytic (+f) bins only so that the per-chip error
/// probability follows the orthogonal non-coherent BFSK law exactly; the
/// reported energies sum the +f and -f images of each tone.
struct ChipDecision {
    int value = 0;
    double e0 = 0.0;
    double e1 = 0.0;
};

struct DemodResult {
    std::optional<BitVector> payload;
    std::vector<ChipDecision> chips;
    double snr_db = 0.0;
    double rss_dbm = 0.0;
    std::optional<std::size_t> sync_offset;
};

/// Subtracts the complex mean (static carrier leakage) from every sample.
ComplexWaveform remove_direct_path(const ComplexWaveform& y);

/// Non-coherent FSK chip detection over n_chips windows starting at
/// frame_start. Exact energy ties resolve to chip 0.
std::vector<ChipDecision> fsk_chip_detect(const ComplexWaveform& y, const DemodConfig& cfg,
                                          std::size_t frame_start, std::size_t n_chips);
std::vector<ChipDecision> fsk_chip_detect(const RealWaveform& y, const DemodConfig& cfg,
                                          std::size_t frame_start, std::size_t n_chips);

/// Slides a quarter-chip hypothesis grid, decodes the 7 preamble bits
/// non-coherently at each offset and correlates the +-1 mapped decisions
/// against the Barker template. First offset scoring >= sync_threshold wins.
std::optional<std::size_t> sync_barker(const ComplexWaveform& y, const DemodConfig& cfg);
std::optional<std::size_t> sync_barker(const RealWaveform& y, const DemodConfig& cfg);

/// Manchester decode of hard chip decisions: {1,0} -> 1, {0,1} -> 0.
/// Invalid pairs ({1,1} or {0,0}) resolve from the first chip of the pair,
/// which keeps the end-to-end bit error rate equal to the chip error rate.
BitVector manchester_decode(const std::vector<std::uint8_t>& chips);
BitVector manchester_decode(const std::vector<ChipDecision>& chips);

/// Win/lose bin contrast across the frame chips, in dB, capped at
/// +-snr_cap_db. Estimates the per-chip tone SNR.
double measure_snr(const std::vector<ChipDecision>& chips, const DemodConfig& cfg);

/// Sideband power over the frame span (frame-mean removed), minus the noise
/// power estimated from a silent guard span, floor-clamped, in dBm.
double measure_rss(const ComplexWaveform& y, std::size_t frame_start, std::size_t frame_len,
                   std::size_t guard_start, std::size_t guard_len, double noise_floor_dbm);

/// Hamming distance / length.
double ber(const BitVector& reference, const BitVector& decoded);

/// Full receive chain: direct-path removal, sync, chip detection, Manchester
/// decode, SNR and RSS measurement. guard_len samples at the tail of the
/// capture are treated as the silent interval for noise estimation.
DemodResult demod_frame(const ComplexWaveform& capture, const DemodConfig& cfg,
                        std::size_t guard_len, double noise_floor_dbm);

}  // namespace vlcbc
