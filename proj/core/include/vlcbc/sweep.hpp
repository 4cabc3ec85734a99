#pragma once

#include "vlcbc/analysis.hpp"
#include "vlcbc/run_config.hpp"

namespace vlcbc {

/// One sweep cell.
struct PointSpec {
    AmbdKind kind = AmbdKind::EhOnly;
    double d_led = 0.3;
    double d_rx = 0.5;
    double p_tx_dbm = 0.0;
};

struct MetricRecord {
    AmbdKind kind = AmbdKind::EhOnly;
    double d_led = 0.0;
    double d_rx = 0.0;
    double p_tx_dbm = 0.0;
    double snr_db = 0.0;
    double snr_db_injected = 0.0;
    double ber = 0.0;
    double frame_detect_rate = 0.0;
    double rss_dbm = 0.0;
    double rss_theory_dbm = 0.0;
    std::size_t n_bits = 0;
    std::size_t n_frames = 0;
    std::uint64_t seed = 0;
};

/// Device emission for one frame: switching waveform plus the payload bits
/// the receiver is checked against.
struct DeviceFrame {
    SwitchWaveform sw;
    BitVector reference;
    bool powered = true;
    bool responded = true;  // control pipeline decoded a command
};

/// Runs the device side of one frame (payload generation, VLC downlink where
/// the pipeline uses it, energy gating) with all randomness drawn from frng.
DeviceFrame device_frame(const RunConfig& cfg, AmbdKind kind, double d_led, Rng& frng,
                         EnergyStore& store);

/// Deterministic per-point seed from the base seed and cell coordinates.
std::uint64_t point_seed(const RunConfig& cfg, const PointSpec& p);

/// Mean noiseless single-bin tone energy of a unit +-1 switching square at
/// its own tone, averaged over the two tones (calibration constant for the
/// injected-SNR bookkeeping).
double unit_square_tone_energy(const RunConfig& cfg);

/// Full chain for one sweep cell, frames_per_point times.
MetricRecord run_point(const RunConfig& cfg, const PointSpec& p);

/// Canonical point order: per kind, the VLC-distance sweep then the
/// BC-distance sweep, each crossed with every source power.
std::vector<PointSpec> sweep_points(const RunConfig& cfg);

/// Executes the sweep on `workers` threads and writes the CSV. With resume,
/// rows already present in an existing file are reused; output is
/// byte-identical to a fresh run either way.
std::vector<MetricRecord> run_sweep(const RunConfig& cfg, const std::string& csv_path,
                                    int workers, bool resume);

std::string csv_header();
std::string csv_line(const MetricRecord& r);
std::vector<MetricRecord> read_csv(const std::string& path);

struct ReportCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SweepReport {
    std::vector<ReportCheck> checks;
    bool all_pass = true;
    std::string text;  // printable table
};

/// Post-processing checks over a finished grid: link-budget slope, distance
/// trends, and the normalized sensitivity ordering.
SweepReport build_report(const std::vector<MetricRecord>& records, const RunConfig& cfg);

}  // namespace vlcbc
