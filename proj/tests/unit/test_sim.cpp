#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "nced/channel.hpp"
#include "nced/errors.hpp"
#include "nced/receiver.hpp"
#include "nced/sim.hpp"
#include "oracles.hpp"

using namespace nced;

namespace {

SimConfig small_config() {
    SimConfig c;
    c.M = 50;
    c.block_len = 200;
    c.blocks = 30;
    c.max_symbols = 1000000;
    c.min_errors = std::numeric_limits<std::int64_t>::max();
    return c;
}

double binomial_se(double p, std::int64_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("scheme and mode names") {
    CHECK(parse_scheme("pam") == Scheme::pam);
    CHECK(parse_scheme("optimal") == Scheme::optimal);
    CHECK(to_string(Scheme::pam) == "pam");
    CHECK_THROWS_AS(parse_scheme("qam"), InvalidArgument);
    CHECK(parse_sweep_mode("both") == SweepMode::both);
    CHECK_THROWS_AS(parse_sweep_mode("fast"), InvalidArgument);
}

TEST_CASE("config validation") {
    SimConfig c;
    CHECK_NOTHROW(c.validate());
    auto bad = [](auto mutate) {
        SimConfig c;
        mutate(c);
        CHECK_THROWS_AS(c.validate(), InvalidArgument);
    };
    bad([](SimConfig& c) { c.M = 0; });
    bad([](SimConfig& c) { c.K = 1; });
    bad([](SimConfig& c) { c.L = 0; });
    bad([](SimConfig& c) { c.decay = 0.0; });
    bad([](SimConfig& c) { c.J = 3; });
    bad([](SimConfig& c) { c.block_len = 30; });
    bad([](SimConfig& c) { c.blocks = 0; });
    bad([](SimConfig& c) { c.threads = 0; });
    bad([](SimConfig& c) { c.min_errors = 0; });
    bad([](SimConfig& c) { c.snr_db = std::numeric_limits<double>::quiet_NaN(); });
}

TEST_CASE("estimates and intervals") {
    const SerEstimate e = make_estimate(100, 10000);
    CHECK(e.ser == doctest::Approx(0.01));
    const double half = 1.96 * std::sqrt(0.01 * 0.99 / 10000) + 0.5 / 10000;
    CHECK(e.ci95_low == doctest::Approx(0.01 - half));
    CHECK(e.ci95_high == doctest::Approx(0.01 + half));
    const SerEstimate zero = make_estimate(0, 50);
    CHECK(zero.ci95_low == 0.0);
    CHECK(zero.ci95_high > 0.0);
    CHECK(make_estimate(50, 50).ci95_high == 1.0);
    CHECK_THROWS_AS(make_estimate(5, 0), InvalidArgument);
    CHECK_THROWS_AS(make_estimate(6, 5), InvalidArgument);
    CHECK(interior_symbols(1000, 13, 4) == 970);
}

TEST_CASE("fused energy kernel reproduces transmit bit for bit") {
    const ChannelProfile p = make_exponential_profile(3, 1.0);
    const NoiseModel noise = NoiseModel::from_snr_db(2.0);
    const std::vector<double> a{0.0, 1.1, 0.4, 1.3, 0.9, 0.2};
    Rng r1 = make_stream(3, 9), r2 = make_stream(3, 9);
    const auto h1 = draw_channel(p, 17, r1);
    const auto h2 = draw_channel(p, 17, r2);
    const auto direct = energy_sequence(transmit(a, h1, noise, r1));
    const std::vector<std::vector<double>> one{a};
    const auto fused = energy_sequences(one, h2, noise, r2);
    REQUIRE(fused.size() == 1);
    CHECK(fused[0] == direct);

    // two sequences share the noise draw
    std::vector<double> b(a.size(), 0.0);
    const std::vector<std::vector<double>> two{a, b};
    Rng r3 = make_stream(3, 9);
    const auto h3 = draw_channel(p, 17, r3);
    const auto pair = energy_sequences(two, h3, noise, r3);
    CHECK(pair[0] == direct);
    CHECK_THROWS_AS(energy_sequences(std::vector<std::vector<double>>{a, {1.0}}, h3, noise, r3), InvalidArgument);
}

TEST_CASE("noiseless flat channel with many antennas decodes almost perfectly") {
    SimConfig c = small_config();
    c.M = 10000;
    c.K = 2;
    c.L = 1;
    c.snr_db = 60.0;
    c.blocks = 5;
    c.block_len = 400;
    for (Scheme s : {Scheme::pam, Scheme::optimal}) {
        c.scheme = s;
        const SerEstimate e = run_mc(c);
        CHECK(e.trials == 2000);
        CHECK(e.ser < 1e-3);
    }
}

TEST_CASE("flat-channel Monte Carlo agrees with the exact energy law") {
    for (int M : {25, 100}) {
        for (double snr : {0.0, 4.0}) {
            SimConfig c;
            c.L = 1;
            c.M = M;
            c.snr_db = snr;
            // symbols of one block share the channel, so blocks are kept at the
            // shortest allowed length and the binomial error is widened by the
            // largest possible design effect, sqrt(block_len)
            c.blocks = 100000;
            c.block_len = 3;
            c.max_symbols = 300000;
            c.min_errors = std::numeric_limits<std::int64_t>::max();
            c.threads = 4;
            const PairedEstimate est = run_mc_paired(c);
            for (Scheme s : {Scheme::pam, Scheme::optimal}) {
                const SerEstimate& e = s == Scheme::pam ? est.pam : est.optimal;
                const LinkDesign d = design_link(c, s);
                const double exact =
                    oracle::flat_exact_ser(d.constellation.energies(), d.rule.lower, d.rule.upper, d.noise.sigma_n_sq, M);
                CHECK(e.trials == 300000);
                CHECK(std::abs(e.ser - exact) < 3.0 * std::sqrt(3.0) * binomial_se(exact, e.trials));
            }
        }
    }
}

TEST_CASE("runs are reproducible and independent of the thread count") {
    SimConfig c = small_config();
    const SerEstimate a = run_mc(c);
    const SerEstimate b = run_mc(c);
    CHECK(a.errors == b.errors);
    CHECK(a.trials == b.trials);
    c.threads = 3;
    const SerEstimate t = run_mc(c);
    CHECK(t.errors == a.errors);
    CHECK(t.trials == a.trials);
    c.threads = 1;
    c.seed = 2;
    CHECK(run_mc(c).errors != a.errors);

    // the early stop lands on the same block regardless of threads
    SimConfig s;
    s.M = 25;
    s.snr_db = 0.0;
    s.blocks = 400;
    s.min_errors = 500;
    const SerEstimate s1 = run_mc(s);
    s.threads = 5;
    const SerEstimate s5 = run_mc(s);
    CHECK(s1.trials == s5.trials);
    CHECK(s1.errors == s5.errors);
    CHECK(s1.trials >= kMinTrialsBeforeStop);
    CHECK(s1.trials < 400 * 970);
}

TEST_CASE("paired runs see the same draws as single-scheme runs") {
    SimConfig c = small_config();
    const PairedEstimate p = run_mc_paired(c);
    c.scheme = Scheme::pam;
    const SerEstimate pam = run_mc(c);
    c.scheme = Scheme::optimal;
    const SerEstimate opt = run_mc(c);
    CHECK(p.pam.errors == pam.errors);
    CHECK(p.optimal.errors == opt.errors);
    CHECK(p.pam.trials == pam.trials);
}

TEST_CASE("symbol cap bounds the number of blocks") {
    SimConfig c = small_config();
    c.max_symbols = 1000;
    const int per_block = interior_symbols(c.block_len, 13, c.L);
    const SerEstimate e = run_mc(c);
    CHECK(e.trials == per_block * ((1000 + per_block - 1) / per_block));
}

TEST_CASE("antenna sweep: shape and monotonicity") {
    SimConfig c;
    c.snr_db = 2.0;
    const std::vector<int> M{100, 150, 200, 250, 300, 350, 400};
    const auto rows = sweep_antennas(c, M, SweepMode::analytic);
    REQUIRE(rows.size() == 14);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < 7; ++i) {
        const SweepRow& opt = rows[i];
        const SweepRow& pam = rows[i + 7];
        CHECK(opt.scheme == Scheme::optimal);
        CHECK(pam.scheme == Scheme::pam);
        CHECK(opt.M == M[i]);
        CHECK(opt.analytic_ser <= pam.analytic_ser);
        CHECK(std::isnan(opt.mc_ser));
        CHECK(opt.trials == 0);
        if (i > 0) {
            CHECK(opt.analytic_ser < rows[i - 1].analytic_ser);
            CHECK(pam.analytic_ser < rows[i + 6].analytic_ser);
        }
        x.push_back(M[i]);
        y.push_back(std::log10(opt.analytic_ser));
    }
    CHECK(oracle::linear_fit(x, y).r2 >= 0.98);
    CHECK_THROWS_AS(sweep_antennas(c, std::vector<int>{}, SweepMode::analytic), InvalidArgument);
}

TEST_CASE("SNR sweep is monotone and the table formats NaN as empty") {
    SimConfig c;
    const std::vector<double> snr{0.0, 4.0, 8.0};
    const auto rows = sweep_snr(c, snr, SweepMode::analytic);
    REQUIRE(rows.size() == 6);
    CHECK(rows[1].analytic_ser < rows[0].analytic_ser);
    CHECK(rows[2].analytic_ser < rows[1].analytic_ser);
    const std::string table = format_table(rows);
    CHECK(table.rfind("scheme,M,K,L,snr_db,analytic_ser,mc_ser,ci_low,ci_high,trials\n", 0) == 0);
    CHECK(table.find("optimal,100,4,4,4,") != std::string::npos);
    CHECK(table.find(",,,,0\n") != std::string::npos);
}

TEST_CASE("floor summary relations") {
    SimConfig c;
    const FloorSummary f = floor_summary(c);
    CHECK(f.optimal_40 <= f.optimal_30);
    CHECK(f.pam_40 <= f.pam_30);
    CHECK(f.optimal_below_pam());
    CHECK(f.pam_floor());
    CHECK(f.flat_keeps_falling());
    CHECK(f.optimal_change() == doctest::Approx(std::abs(f.optimal_40 - f.optimal_30) / f.optimal_30));
}

TEST_CASE("antenna search") {
    SimConfig c;
    CHECK(antenna_grid().front() == 25);
    CHECK(antenna_grid().back() == 2000);
    CHECK(antenna_grid().size() == 80);

    const AntennaSearchResult easy = find_min_antennas(0.5, 0.0, Scheme::pam, c);
    CHECK(easy.M == 25);
    CHECK(!easy.confirmation.has_value());

    CHECK_THROWS_AS(find_min_antennas(1e-30, 0.0, Scheme::pam, c), SearchExhausted);
    CHECK_THROWS_AS(find_min_antennas(0.0, 0.0, Scheme::pam, c), InvalidArgument);

    for (Scheme s : {Scheme::optimal, Scheme::pam}) {
        const AntennaSearchResult r = find_min_antennas(std::pow(10.0, -2.5), 0.0, s, c);
        CHECK(r.analytic_ser <= std::pow(10.0, -2.5));
        SimConfig below = c;
        below.M = r.M - 25;
        below.snr_db = 0.0;
        CHECK(design_link(below, s).analytic_ser > std::pow(10.0, -2.5));
    }
}

TEST_CASE("antenna search with confirmation") {
    SimConfig c = small_config();
    c.L = 1;
    c.blocks = 20;
    const AntennaSearchResult r = find_min_antennas(0.05, 4.0, Scheme::optimal, c, true);
    REQUIRE(r.confirmation.has_value());
    CHECK(r.confirmation->trials > 0);
}

}
