#include "nced/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "nced/errors.hpp"
#include "nced/psi_stats.hpp"
#include "nced/receiver.hpp"

namespace nced {

std::string to_string(Scheme scheme) { return scheme == Scheme::pam ? "pam" : "optimal"; }

Scheme parse_scheme(const std::string& name) {
    if (name == "pam") return Scheme::pam;
    if (name == "optimal") return Scheme::optimal;
    throw InvalidArgument("unknown scheme '" + name + "' (expected pam or optimal)");
}

SweepMode parse_sweep_mode(const std::string& name) {
    if (name == "analytic") return SweepMode::analytic;
    if (name == "mc") return SweepMode::mc;
    if (name == "both") return SweepMode::both;
    throw InvalidArgument("unknown mode '" + name + "' (expected analytic, mc or both)");
}

int interior_symbols(int block_len, int J, int L) { return block_len - 2 * (J + L - 2); }

namespace {

int resolved_length(const SimConfig& c) { return c.J > 0 ? c.J : default_equalizer_length(c.L); }

}  // namespace

void SimConfig::validate() const {
    if (M < 1) throw InvalidArgument("M must be positive");
    if (K < 2) throw InvalidArgument("K must be at least 2");
    if (L < 1) throw InvalidArgument("L must be positive");
    if (!(decay > 0.0)) throw InvalidArgument("decay must be positive");
    if (!std::isfinite(snr_db)) throw InvalidArgument("snr_db must be finite");
    if (J < 0) throw InvalidArgument("J must be non-negative");
    const int length = resolved_length(*this);
    if (length < L) throw InvalidArgument("J must be at least L");
    if (block_len <= length + L || interior_symbols(block_len, length, L) < 1)
        throw InvalidArgument("block_len too short for the equalizer and channel edges");
    if (blocks < 1) throw InvalidArgument("blocks must be positive");
    if (max_symbols < 1) throw InvalidArgument("max_symbols must be positive");
    if (min_errors < 1) throw InvalidArgument("min_errors must be positive");
    if (threads < 1) throw InvalidArgument("threads must be positive");
}

LinkDesign design_link(const SimConfig& config, Scheme scheme) {
    config.validate();
    LinkDesign d;
    d.scheme = scheme;
    d.profile = make_exponential_profile(config.L, config.decay);
    d.noise = NoiseModel::from_snr_db(config.snr_db);
    d.equalizer = design_equalizer(d.profile, resolved_length(config));
    d.stats = {config.M, config.K, d.profile, d.noise.sigma_n_sq, d.equalizer.w};
    if (scheme == Scheme::optimal) {
        OptimizerResult opt = optimize(d.stats.design_context());
        d.constellation = opt.constellation;
        d.rule = opt.decision_rule;
        d.t_max = opt.t_max;
        d.analytic_ser = ser_opt_closed_form(opt.t_max, config.K);
        d.log10_analytic_ser = log10_ser_opt_closed_form(opt.t_max, config.K);
    } else {
        d.constellation = pam_constellation(config.K);
        d.rule = pam_thresholds(config.K, d.equalizer.w, d.noise.sigma_n_sq);
        d.analytic_ser = ser_pam(d.stats);
        d.log10_analytic_ser = log10_ser_pam(d.stats);
    }
    d.amplitudes = d.constellation.amplitudes();
    return d;
}

SerEstimate make_estimate(std::int64_t errors, std::int64_t trials) {
    if (trials < 1 || errors < 0 || errors > trials) throw InvalidArgument("invalid error/trial counts");
    SerEstimate e;
    e.errors = errors;
    e.trials = trials;
    const double n = static_cast<double>(trials);
    e.ser = static_cast<double>(errors) / n;
    const double half = 1.959963984540054 * std::sqrt(e.ser * (1.0 - e.ser) / n) + 0.5 / n;
    e.ci95_low = std::max(0.0, e.ser - half);
    e.ci95_high = std::min(1.0, e.ser + half);
    return e;
}

std::vector<std::vector<double>> energy_sequences(std::span<const std::vector<double>> amplitudes,
                                                  const ChannelRealization& channel,
                                                  const NoiseModel& noise, Rng& rng) {
    if (amplitudes.empty()) throw InvalidArgument("no amplitude sequence given");
    const std::size_t N = amplitudes.front().size();
    if (N == 0) throw InvalidArgument("symbol sequence is empty");
    for (const auto& a : amplitudes)
        if (a.size() != N) throw InvalidArgument("amplitude sequences differ in length");

    const std::size_t S = amplitudes.size();
    const std::size_t M = channel.antennas();
    const std::size_t L = channel.taps();
    std::vector<std::vector<double>> z(S, std::vector<double>(N, 0.0));
    ComplexGaussian draw(rng);
    for (std::size_t t = 0; t < N; ++t) {
        const std::size_t taps = std::min(L, t + 1);
        for (std::size_t m = 0; m < M; ++m) {
            const cdouble n = draw(noise.sigma_n_sq);
            const cdouble* h = &channel.at(m, 0);
            for (std::size_t s = 0; s < S; ++s) {
                const double* a = amplitudes[s].data() + t;
                cdouble acc = n;
                for (std::size_t l = 0; l < taps; ++l) acc += h[l] * *(a - l);
                z[s][t] += std::norm(acc);
            }
        }
        for (std::size_t s = 0; s < S; ++s) z[s][t] /= static_cast<double>(M);
    }
    return z;
}

namespace {

constexpr std::size_t kMaxSchemes = 2;

struct BlockResult {
    std::array<std::int64_t, kMaxSchemes> errors{};
    std::int64_t trials = 0;
};

BlockResult run_block(std::span<const LinkDesign> designs, const SimConfig& cfg, std::uint64_t block) {
    const LinkDesign& ref = designs.front();
    const Equalizer& eq = ref.equalizer;
    const auto N = static_cast<std::size_t>(cfg.block_len);

    Rng rng = make_stream(cfg.seed, block);
    const ChannelRealization channel = draw_channel(ref.profile, cfg.M, rng);
    std::uniform_int_distribution<int> pick(0, cfg.K - 1);
    std::vector<int> index(N);
    for (int& i : index) i = pick(rng);

    std::vector<std::vector<double>> amps(designs.size(), std::vector<double>(N));
    for (std::size_t s = 0; s < designs.size(); ++s)
        for (std::size_t t = 0; t < N; ++t)
            amps[s][t] = designs[s].amplitudes[static_cast<std::size_t>(index[t])];

    const auto z = energy_sequences(amps, channel, ref.noise, rng);

    const auto edge = static_cast<std::size_t>(eq.length + cfg.L - 2);
    const std::size_t offset = static_cast<std::size_t>(eq.length - eq.delay);
    BlockResult out;
    out.trials = static_cast<std::int64_t>(N - 2 * edge);
    for (std::size_t s = 0; s < designs.size(); ++s) {
        const std::vector<double> psi = equalize(z[s], eq);
        std::int64_t errors = 0;
        for (std::size_t k = edge; k < N - edge; ++k) {
            const int decided = decode(psi[k - offset], designs[s].rule);
            errors += decided - 1 != index[k];
        }
        out.errors[s] = errors;
    }
    return out;
}

std::vector<SerEstimate> run_engine(std::span<const LinkDesign> designs, const SimConfig& cfg) {
    if (designs.empty() || designs.size() > kMaxSchemes) throw InvalidArgument("one or two schemes per run");
    const std::int64_t per_block =
        interior_symbols(cfg.block_len, designs.front().equalizer.length, cfg.L);
    const std::int64_t needed = (cfg.max_symbols + per_block - 1) / per_block;
    const auto total_blocks = static_cast<std::uint64_t>(std::min<std::int64_t>(cfg.blocks, needed));

    std::array<std::int64_t, kMaxSchemes> errors{};
    std::int64_t trials = 0;
    auto done = [&] {
        if (trials < kMinTrialsBeforeStop) return false;
        for (std::size_t s = 0; s < designs.size(); ++s)
            if (errors[s] < cfg.min_errors) return false;
        return true;
    };

    const auto workers = static_cast<std::uint64_t>(cfg.threads);
    const std::uint64_t batch = workers * 4;
    std::vector<BlockResult> results(batch);
    bool stop = false;
    for (std::uint64_t start = 0; start < total_blocks && !stop; start += batch) {
        const std::uint64_t count = std::min(batch, total_blocks - start);
        if (workers == 1) {
            for (std::uint64_t i = 0; i < count; ++i) results[i] = run_block(designs, cfg, start + i);
        } else {
            std::vector<std::jthread> pool;
            for (std::uint64_t w = 0; w < std::min(workers, count); ++w)
                pool.emplace_back([&, w] {
                    for (std::uint64_t i = w; i < count; i += workers) results[i] = run_block(designs, cfg, start + i);
                });
        }
        // fold in block order so the stopping point matches a sequential run
        for (std::uint64_t i = 0; i < count; ++i) {
            trials += results[i].trials;
            for (std::size_t s = 0; s < designs.size(); ++s) errors[s] += results[i].errors[s];
            if (done()) {
                stop = true;
                break;
            }
        }
    }

    std::vector<SerEstimate> out;
    for (std::size_t s = 0; s < designs.size(); ++s) out.push_back(make_estimate(errors[s], trials));
    return out;
}

}  // namespace

SerEstimate run_mc(const SimConfig& config) {
    const LinkDesign design = design_link(config);
    return run_engine(std::span(&design, 1), config).front();
}

PairedEstimate run_mc_paired(const SimConfig& config) {
    const std::array<LinkDesign, 2> designs{design_link(config, Scheme::pam), design_link(config, Scheme::optimal)};
    const auto est = run_engine(designs, config);
    return {est[0], est[1]};
}

std::vector<SweepRow> evaluate_point(const SimConfig& base, SweepMode mode) {
    const LinkDesign opt = design_link(base, Scheme::optimal);
    const LinkDesign pam = design_link(base, Scheme::pam);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    auto row = [&](const LinkDesign& d) {
        SweepRow r;
        r.scheme = d.scheme;
        r.M = base.M;
        r.K = base.K;
        r.L = base.L;
        r.snr_db = base.snr_db;
        r.analytic_ser = mode == SweepMode::mc ? nan : d.analytic_ser;
        r.mc_ser = r.ci_low = r.ci_high = nan;
        return r;
    };
    std::vector<SweepRow> rows{row(opt), row(pam)};
    if (mode != SweepMode::analytic) {
        const PairedEstimate est = run_mc_paired(base);
        auto fill = [](SweepRow& r, const SerEstimate& e) {
            r.mc_ser = e.ser;
            r.ci_low = e.ci95_low;
            r.ci_high = e.ci95_high;
            r.trials = e.trials;
        };
        fill(rows[0], est.optimal);
        fill(rows[1], est.pam);
    }
    return rows;
}

namespace {

template <typename T, typename Apply>
std::vector<SweepRow> sweep(const SimConfig& base, std::span<const T> values, SweepMode mode, Apply apply) {
    if (values.empty()) throw InvalidArgument("sweep range is empty");
    std::vector<SweepRow> optimal, pam;
    for (const T& v : values) {
        SimConfig cfg = base;
        apply(cfg, v);
        const auto rows = evaluate_point(cfg, mode);
        optimal.push_back(rows[0]);
        pam.push_back(rows[1]);
    }
    optimal.insert(optimal.end(), pam.begin(), pam.end());
    return optimal;
}

}  // namespace

std::vector<SweepRow> sweep_antennas(const SimConfig& base, std::span<const int> m_values, SweepMode mode) {
    return sweep(base, m_values, mode, [](SimConfig& c, int m) { c.M = m; });
}

std::vector<SweepRow> sweep_snr(const SimConfig& base, std::span<const double> snr_values, SweepMode mode) {
    return sweep(base, snr_values, mode, [](SimConfig& c, double s) { c.snr_db = s; });
}

double FloorSummary::optimal_change() const { return std::abs(optimal_40 - optimal_30) / optimal_30; }
double FloorSummary::pam_change() const { return std::abs(pam_40 - pam_30) / pam_30; }

FloorSummary floor_summary(const SimConfig& base) {
    auto analytic = [&](double snr, int L, Scheme scheme) {
        SimConfig c = base;
        c.snr_db = snr;
        c.L = L;
        if (L != base.L) c.J = 0;
        return design_link(c, scheme).analytic_ser;
    };
    FloorSummary f;
    f.optimal_30 = analytic(30.0, base.L, Scheme::optimal);
    f.optimal_40 = analytic(40.0, base.L, Scheme::optimal);
    f.pam_30 = analytic(30.0, base.L, Scheme::pam);
    f.pam_40 = analytic(40.0, base.L, Scheme::pam);
    f.flat_30 = analytic(30.0, 1, Scheme::optimal);
    f.flat_40 = analytic(40.0, 1, Scheme::optimal);
    return f;
}

std::vector<int> antenna_grid() {
    std::vector<int> grid;
    for (int m = 25; m <= 2000; m += 25) grid.push_back(m);
    return grid;
}

AntennaSearchResult find_min_antennas(double target_ser, double snr_db, Scheme scheme, const SimConfig& base,
                                      bool confirm) {
    if (!(target_ser > 0.0 && target_ser < 1.0)) throw InvalidArgument("target SER must lie in (0, 1)");
    const double log_target = std::log10(target_ser);
    SimConfig cfg = base;
    cfg.snr_db = snr_db;
    cfg.scheme = scheme;
    for (int m : antenna_grid()) {
        cfg.M = m;
        const LinkDesign d = design_link(cfg, scheme);
        if (d.log10_analytic_ser <= log_target) {
            AntennaSearchResult r;
            r.M = m;
            r.analytic_ser = d.analytic_ser;
            if (confirm) r.confirmation = run_mc(cfg);
            return r;
        }
    }
    std::ostringstream msg;
    msg << "SER " << target_ser << " not reached by " << to_string(scheme) << " for M <= 2000 at " << snr_db
        << " dB";
    throw SearchExhausted(msg.str());
}

}  // namespace nced
