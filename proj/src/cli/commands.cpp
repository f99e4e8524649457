#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "nced/cli.hpp"
#include "nced/errors.hpp"

namespace nced::cli {

namespace {

struct Options {
    SimConfig sim;
    std::string scheme = "optimal";
    std::string mode = "analytic";
    std::string axis = "antennas";
    std::string range;
    std::string out;
    double target_ser = 0.0;
    bool confirm = false;
};

using Json = nlohmann::ordered_json;

Json resolved_config(const Options& o) {
    const SimConfig& s = o.sim;
    Json j;
    j["k"] = s.K;
    j["m"] = s.M;
    j["l"] = s.L;
    j["decay"] = s.decay;
    j["snr-db"] = s.snr_db;
    j["j"] = s.J;
    j["scheme"] = o.scheme;
    j["seed"] = s.seed;
    j["blocks"] = s.blocks;
    j["block-len"] = s.block_len;
    j["max-symbols"] = s.max_symbols;
    j["min-errors"] = s.min_errors;
    j["threads"] = s.threads;
    j["mode"] = o.mode;
    j["axis"] = o.axis;
    j["range"] = o.range;
    j["target-ser"] = o.target_ser;
    j["confirm"] = o.confirm;
    j["out"] = o.out;
    return j;
}

class Emitter {
public:
    Emitter(std::string command, const Options& options, std::ostream& out)
        : command_(std::move(command)), options_(options), out_(out), start_(std::chrono::steady_clock::now()) {}

    /// Data goes to --out with a manifest beside it, or to stdout.
    void emit(const std::string& text, const Json& summary = Json()) {
        if (options_.out.empty()) {
            out_ << text;
            return;
        }
        write_file(options_.out, text);
        Manifest m;
        m.command = command_;
        m.config = resolved_config(options_);
        m.seed = options_.sim.seed;
        m.outputs = {options_.out};
        m.summary = summary;
        m.wall_clock_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        write_file(manifest_path(options_.out), manifest_record(m).dump(2) + "\n");
    }

private:
    std::string command_;
    const Options& options_;
    std::ostream& out_;
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void cmd_optimize(const Options& o, std::ostream& out) {
    const LinkDesign d = design_link(o.sim, Scheme::optimal);
    const Json record = constellation_record(d.constellation, d.rule, d.t_max, o.sim.M, o.sim.snr_db, d.profile);
    Emitter("optimize", o, out).emit(record.dump(2) + "\n");
}

void cmd_ser(const Options& o, std::ostream& out) {
    const SweepMode mode = parse_sweep_mode(o.mode);
    Emitter emitter("ser", o, out);
    SimConfig cfg = o.sim;
    cfg.scheme = parse_scheme(o.scheme);
    const LinkDesign d = design_link(cfg);

    SweepRow row;
    row.scheme = cfg.scheme;
    row.M = cfg.M;
    row.K = cfg.K;
    row.L = cfg.L;
    row.snr_db = cfg.snr_db;
    const double nan = std::nan("");
    row.analytic_ser = mode == SweepMode::mc ? nan : d.analytic_ser;
    row.mc_ser = row.ci_low = row.ci_high = nan;
    if (mode != SweepMode::analytic) {
        const SerEstimate e = run_mc(cfg);
        row.mc_ser = e.ser;
        row.ci_low = e.ci95_low;
        row.ci_high = e.ci95_high;
        row.trials = e.trials;
    }
    const std::vector<SweepRow> rows{row};
    emitter.emit(format_table(rows));
}

void cmd_sweep(const Options& o, std::ostream& out) {
    const SweepMode mode = parse_sweep_mode(o.mode);
    if (o.range.empty()) throw InvalidArgument("--range is required for sweep");
    const std::vector<double> values = parse_range(o.range);
    Emitter emitter("sweep", o, out);

    if (o.axis == "antennas") {
        std::vector<int> m_values;
        for (double v : values) {
            if (v < 1.0 || v != std::floor(v)) throw InvalidArgument("antenna counts must be positive integers");
            m_values.push_back(static_cast<int>(v));
        }
        const auto rows = sweep_antennas(o.sim, m_values, mode);
        emitter.emit(format_table(rows));
    } else if (o.axis == "snr") {
        const auto rows = sweep_snr(o.sim, values, mode);
        const FloorSummary f = floor_summary(o.sim);
        Json summary;
        summary["optimal_30db"] = f.optimal_30;
        summary["optimal_40db"] = f.optimal_40;
        summary["pam_30db"] = f.pam_30;
        summary["pam_40db"] = f.pam_40;
        summary["flat_optimal_30db"] = f.flat_30;
        summary["flat_optimal_40db"] = f.flat_40;
        summary["optimal_floor"] = f.optimal_floor();
        summary["pam_floor"] = f.pam_floor();
        summary["optimal_floor_below_pam"] = f.optimal_below_pam();
        summary["flat_control_keeps_falling"] = f.flat_keeps_falling();
        emitter.emit(format_table(rows), summary);

        out << "# floor optimal: " << fmt(f.optimal_30) << " -> " << fmt(f.optimal_40) << " (change "
            << fmt(f.optimal_change()) << ", floor " << (f.optimal_floor() ? "yes" : "no") << ")\n"
            << "# floor pam: " << fmt(f.pam_30) << " -> " << fmt(f.pam_40) << " (change " << fmt(f.pam_change())
            << ", floor " << (f.pam_floor() ? "yes" : "no") << ")\n"
            << "# optimal floor below pam: " << (f.optimal_below_pam() ? "yes" : "no") << "\n"
            << "# flat control 30 -> 40 dB: " << fmt(f.flat_30) << " -> " << fmt(f.flat_40) << " (keeps falling "
            << (f.flat_keeps_falling() ? "yes" : "no") << ")\n";
    } else {
        throw InvalidArgument("unknown axis '" + o.axis + "' (expected antennas or snr)");
    }
}

void cmd_find_antennas(const Options& o, std::ostream& out) {
    Emitter emitter("find-antennas", o, out);
    const AntennaSearchResult opt = find_min_antennas(o.target_ser, o.sim.snr_db, Scheme::optimal, o.sim, o.confirm);
    const AntennaSearchResult pam = find_min_antennas(o.target_ser, o.sim.snr_db, Scheme::pam, o.sim, o.confirm);
    const double reduction = 100.0 * (pam.M - opt.M) / pam.M;

    auto mc = [](const AntennaSearchResult& r) {
        if (!r.confirmation) return std::string(",,");
        return fmt(r.confirmation->ser) + ',' + fmt(r.confirmation->ci95_low) + ',' + fmt(r.confirmation->ci95_high);
    };
    std::ostringstream t;
    t << "target_ser,snr_db,K,L,m_optimal,m_pam,reduction_pct,analytic_ser_optimal,analytic_ser_pam,"
         "mc_ser_optimal,ci_low_optimal,ci_high_optimal,mc_ser_pam,ci_low_pam,ci_high_pam\n";
    t << fmt(o.target_ser) << ',' << fmt(o.sim.snr_db) << ',' << o.sim.K << ',' << o.sim.L << ',' << opt.M << ','
      << pam.M << ',' << fmt(reduction) << ',' << fmt(opt.analytic_ser) << ',' << fmt(pam.analytic_ser) << ','
      << mc(opt) << ',' << mc(pam) << '\n';
    emitter.emit(t.str());
}

}  // namespace

std::vector<double> parse_range(const std::string& text) {
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw InvalidArgument("malformed range '" + text + "'");
        }
        if (used != s.size() || !std::isfinite(v)) throw InvalidArgument("malformed range '" + text + "'");
        return v;
    };
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, sep)) parts.push_back(item);
        if (!s.empty() && s.back() == sep) parts.push_back("");
        return parts;
    };

    if (text.empty()) throw InvalidArgument("range is empty");
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw InvalidArgument("range must be start:stop:step");
        const double a = number(parts[0]), b = number(parts[1]), step = number(parts[2]);
        if (!(step > 0.0)) throw InvalidArgument("range step must be positive");
        if (b < a) throw InvalidArgument("range is empty");
        const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
        for (long i = 0; i <= n; ++i) values.push_back(a + static_cast<double>(i) * step);
    } else {
        for (const auto& part : split(text, ',')) values.push_back(number(part));
    }
    if (values.empty()) throw InvalidArgument("range is empty");
    return values;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Energy-detection massive SIMO: constellation design, SER analysis and Monte Carlo"};
    app.set_version_flag("--version", version());
    app.set_config("--config", "", "flat key = value file whose keys mirror the long flag names");
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--k", o.sim.K, "constellation size")->capture_default_str();
    app.add_option("--m", o.sim.M, "receive antennas")->capture_default_str();
    app.add_option("--l", o.sim.L, "channel taps")->capture_default_str();
    app.add_option("--decay", o.sim.decay, "exponential decay rate of the tap profile")->capture_default_str();
    app.add_option("--snr-db", o.sim.snr_db, "transmit SNR in dB")->capture_default_str();
    app.add_option("--j", o.sim.J, "equalizer length, 0 for 4(L-1)+1")->capture_default_str();
    app.add_option("--scheme", o.scheme, "pam or optimal")->capture_default_str();
    app.add_option("--seed", o.sim.seed, "master seed")->capture_default_str();
    app.add_option("--blocks", o.sim.blocks, "channel blocks")->capture_default_str();
    app.add_option("--block-len", o.sim.block_len, "symbols per block")->capture_default_str();
    app.add_option("--max-symbols", o.sim.max_symbols, "Monte Carlo symbol cap")->capture_default_str();
    app.add_option("--min-errors", o.sim.min_errors, "errors needed before an early stop")->capture_default_str();
    app.add_option("--threads", o.sim.threads, "worker threads")->capture_default_str();
    app.add_option("--mode", o.mode, "analytic, mc or both")->capture_default_str();
    app.add_option("--axis", o.axis, "sweep axis: antennas or snr")->capture_default_str();
    app.add_option("--range", o.range, "start:stop:step or a comma list");
    app.add_option("--target-ser", o.target_ser, "SER target for find-antennas");
    app.add_flag("--confirm", o.confirm, "Monte Carlo confirmation in find-antennas");
    app.add_option("--out", o.out, "output file; a manifest is written beside it");

    auto* optimize_cmd = app.add_subcommand("optimize", "optimal constellation and thresholds");
    auto* ser_cmd = app.add_subcommand("ser", "SER of one scheme");
    auto* sweep_cmd = app.add_subcommand("sweep", "SER table over antennas or SNR for both schemes");
    auto* find_cmd = app.add_subcommand("find-antennas", "smallest M reaching a target SER, both schemes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (optimize_cmd->parsed())
            cmd_optimize(o, out);
        else if (ser_cmd->parsed())
            cmd_ser(o, out);
        else if (sweep_cmd->parsed())
            cmd_sweep(o, out);
        else if (find_cmd->parsed())
            cmd_find_antennas(o, out);
        return kExitOk;
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConvergenceFailure& e) {
        err << "convergence failure: " << e.what() << "\n";
        return kExitSearch;
    } catch (const SearchExhausted& e) {
        err << "search exhausted: " << e.what() << "\n";
        return kExitSearch;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace nced::cli
