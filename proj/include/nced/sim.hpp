#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nced/analysis.hpp"
#include "nced/channel.hpp"
#include "nced/constellation.hpp"
#include "nced/equalizer.hpp"

namespace nced {

enum class Scheme { pam, optimal };

std::string to_string(Scheme scheme);
/// Accepts "pam" and "optimal"; throws InvalidArgument otherwise.
Scheme parse_scheme(const std::string& name);

/// Trials counted before the error target may stop a run.
inline constexpr std::int64_t kMinTrialsBeforeStop = 100000;

struct SimConfig {
    int M = 100;
    int K = 4;
    int L = 4;
    double decay = 1.0;
    double snr_db = 4.0;
    Scheme scheme = Scheme::optimal;
    int block_len = 1000;
    int blocks = 1000;
    std::uint64_t seed = 1;
    int J = 0;  ///< 0 selects the default length
    std::int64_t max_symbols = 1000000;
    std::int64_t min_errors = 100;
    int threads = 1;

    /// Throws InvalidArgument on out-of-range fields.
    void validate() const;
};

/// Everything a run needs that does not depend on random draws.
struct LinkDesign {
    Scheme scheme = Scheme::optimal;
    ChannelProfile profile{std::vector<double>{1.0}};
    NoiseModel noise;
    Equalizer equalizer;
    LinkStatistics stats;
    Constellation constellation{std::vector<double>{0.0}};
    DecisionRule rule;
    std::vector<double> amplitudes;
    double t_max = 0.0;  ///< zero for PAM
    double analytic_ser = 0.0;
    double log10_analytic_ser = 0.0;
};

LinkDesign design_link(const SimConfig& config, Scheme scheme);
inline LinkDesign design_link(const SimConfig& config) { return design_link(config, config.scheme); }

struct SerEstimate {
    std::int64_t errors = 0;
    std::int64_t trials = 0;
    double ser = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 1.0;
};

/// Normal-approximation 95% interval widened by 0.5/trials and clamped to [0,1].
SerEstimate make_estimate(std::int64_t errors, std::int64_t trials);

/// Symbols kept per block after discarding J+L-2 at each end.
int interior_symbols(int block_len, int J, int L);

/// Antenna-averaged energy sequences for several amplitude sequences that
/// share one channel realization and one noise draw. Noise is drawn for
/// t = 0, 1, ... and antennas 0..M-1 exactly as transmit() does, so a single
/// sequence reproduces energy_sequence(transmit(...)) bit for bit.
std::vector<std::vector<double>> energy_sequences(std::span<const std::vector<double>> amplitudes,
                                                  const ChannelRealization& channel,
                                                  const NoiseModel& noise, Rng& rng);

/// Monte Carlo SER for config.scheme.
SerEstimate run_mc(const SimConfig& config);

struct PairedEstimate {
    SerEstimate pam;
    SerEstimate optimal;
};

/// Both schemes on identical channel, symbol-index and noise draws. The run
/// stops once both schemes meet the error target.
PairedEstimate run_mc_paired(const SimConfig& config);

enum class SweepMode { analytic, mc, both };
SweepMode parse_sweep_mode(const std::string& name);

/// One row of a result table; mc fields are NaN and trials 0 when no
/// simulation was run.
struct SweepRow {
    Scheme scheme = Scheme::optimal;
    int M = 0;
    int K = 0;
    int L = 0;
    double snr_db = 0.0;
    double analytic_ser = 0.0;
    double mc_ser = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::int64_t trials = 0;
};

/// Rows for both schemes at base; scheme-major order (optimal, then pam).
std::vector<SweepRow> evaluate_point(const SimConfig& base, SweepMode mode);

std::vector<SweepRow> sweep_antennas(const SimConfig& base, std::span<const int> m_values, SweepMode mode);
std::vector<SweepRow> sweep_snr(const SimConfig& base, std::span<const double> snr_values, SweepMode mode);

/// High-SNR behaviour at base.M, base.K: analytic SER at 30 and 40 dB for
/// both schemes on base.L taps and for the optimal design on one tap.
struct FloorSummary {
    double optimal_30 = 0.0;
    double optimal_40 = 0.0;
    double pam_30 = 0.0;
    double pam_40 = 0.0;
    double flat_30 = 0.0;
    double flat_40 = 0.0;

    double optimal_change() const;  ///< |s40 - s30| / s30
    double pam_change() const;
    bool optimal_floor() const { return optimal_change() < 0.05; }
    bool pam_floor() const { return pam_change() < 0.05; }
    bool optimal_below_pam() const { return optimal_40 < pam_40; }
    bool flat_keeps_falling() const { return flat_40 * 5.0 <= flat_30; }
};
FloorSummary floor_summary(const SimConfig& base);

/// M grid used by the antenna search: 25, 50, ..., 2000.
std::vector<int> antenna_grid();

struct AntennaSearchResult {
    int M = 0;
    double analytic_ser = 0.0;
    std::optional<SerEstimate> confirmation;
};

/// Smallest grid M whose analytic SER is at most target. With confirm set,
/// runs Monte Carlo at the returned M. Throws SearchExhausted when no grid
/// point reaches the target.
AntennaSearchResult find_min_antennas(double target_ser, double snr_db, Scheme scheme, const SimConfig& base,
                                      bool confirm = false);

/// Result table as comma-separated text with a header row.
std::string format_table(std::span<const SweepRow> rows);

}  // namespace nced
