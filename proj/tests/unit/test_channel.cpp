#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "nced/channel.hpp"
#include "nced/errors.hpp"
#include "oracles.hpp"

using namespace nced;

TEST_SUITE("channel") {

TEST_CASE("exponential profile normalises to unit power") {
    CHECK(make_exponential_profile(1, 1.0).variances()[0] == 1.0);

    const auto flat = make_exponential_profile(2, 1e-12);
    CHECK(flat.variance(0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(flat.variance(1) == doctest::Approx(0.5).epsilon(1e-9));

    // e^{-l} for l = 0..3 divided by their sum
    double sum = 0.0;
    for (int l = 0; l < 4; ++l) sum += std::exp(-l);
    const auto p = make_exponential_profile(4, 1.0);
    const double expected[] = {0.6439, 0.2369, 0.0871, 0.0321};
    for (std::size_t l = 0; l < 4; ++l) {
        CHECK(std::abs(p.variance(l) - expected[l]) < 1e-3);
        CHECK(p.variance(l) == doctest::Approx(std::exp(-static_cast<double>(l)) / sum).epsilon(1e-14));
    }
    CHECK(p.total_power() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exponential profile rejects bad arguments") {
    CHECK_THROWS_AS(make_exponential_profile(0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(make_exponential_profile(-2, 1.0), InvalidArgument);
    CHECK_THROWS_AS(make_exponential_profile(3, 0.0), InvalidArgument);
    CHECK_THROWS_AS(make_exponential_profile(3, -1.0), InvalidArgument);
}

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(ChannelProfile(std::vector<double>{}), InvalidArgument);
    CHECK_THROWS_AS(ChannelProfile({0.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(ChannelProfile({1.0, -0.1}), InvalidArgument);
    CHECK_THROWS_AS(ChannelProfile({1.0, std::nan("")}), InvalidArgument);
    CHECK_NOTHROW(ChannelProfile({1.0, 0.0}));
}

TEST_CASE("profile moments") {
    const ChannelProfile p({0.25, 0.25, 0.25, 0.25});
    CHECK(p.interference_power() == doctest::Approx(0.75));
    CHECK(p.interference_fourth_moment() == doctest::Approx(3 * 0.0625));
    CHECK(p.interference_cross_moment() == doctest::Approx(6 * 0.0625));
    const double s1 = p.interference_power();
    CHECK(s1 * s1 == doctest::Approx(p.interference_fourth_moment() + p.interference_cross_moment()));
}

TEST_CASE("noise model from SNR") {
    for (double snr : {-6.0, 0.0, 4.0, 40.0}) {
        const NoiseModel n = NoiseModel::from_snr_db(snr);
        CHECK(n.sigma_n_sq == doctest::Approx(std::pow(10.0, -snr / 10.0)).epsilon(1e-15));
        CHECK(NoiseModel::from_variance(n.sigma_n_sq).snr_db == doctest::Approx(snr));
    }
    CHECK_THROWS_AS(NoiseModel::from_variance(0.0), InvalidArgument);
}

TEST_CASE("draw_channel is deterministic for a seed") {
    const auto p = make_exponential_profile(4, 1.0);
    Rng a = make_stream(7, 3), b = make_stream(7, 3), c = make_stream(7, 4);
    const auto ha = draw_channel(p, 16, a);
    CHECK(ha == draw_channel(p, 16, b));
    CHECK_FALSE(ha == draw_channel(p, 16, c));
    CHECK_THROWS_AS(draw_channel(p, 0, a), InvalidArgument);
}

TEST_CASE("draw_channel column variances follow the profile") {
    Rng rng = make_stream(11, 0);
    const int M = 100000;
    const auto h = draw_channel(ChannelProfile({1.0}), M, rng);
    double acc = 0.0;
    for (int m = 0; m < M; ++m) acc += std::norm(h.at(static_cast<std::size_t>(m), 0));
    const double var = acc / M;
    CHECK(var >= 0.98);
    CHECK(var <= 1.02);

    const ChannelProfile p({0.7, 0.0, 0.3});
    const auto g = draw_channel(p, 50000, rng);
    double col2 = 0.0;
    for (std::size_t m = 0; m < g.antennas(); ++m) {
        CHECK(g.at(m, 1) == cdouble(0.0, 0.0));
        col2 += std::norm(g.at(m, 2));
    }
    CHECK(col2 / 50000 == doctest::Approx(0.3).epsilon(0.03));
}

TEST_CASE("complex gaussian splits the variance evenly") {
    Rng rng = make_stream(5, 0);
    ComplexGaussian draw(rng);
    std::vector<double> re, im;
    for (int i = 0; i < 200000; ++i) {
        const cdouble v = draw(2.0);
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    const auto mr = oracle::moments(re), mi = oracle::moments(im);
    CHECK(mr.sd * mr.sd == doctest::Approx(1.0).epsilon(0.02));
    CHECK(mi.sd * mi.sd == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(mr.mean) < 0.01);
}

TEST_CASE("transmit: zero input and vanishing noise gives zero output") {
    Rng rng = make_stream(1, 0);
    const auto h = draw_channel(make_exponential_profile(3, 1.0), 8, rng);
    const std::vector<double> s(10, 0.0);
    const auto y = transmit(s, h, NoiseModel{300.0, 1e-30}, rng);
    for (const auto& v : y)
        for (const auto& x : v) CHECK(std::abs(x) < 1e-10);
}

TEST_CASE("transmit: convolution identities without noise") {
    Rng rng = make_stream(2, 0);
    const NoiseModel quiet{0.0, 0.0};

    const auto h1 = draw_channel(ChannelProfile({1.0}), 6, rng);
    const std::vector<double> one{1.0};
    const auto y1 = transmit(one, h1, quiet, rng);
    for (std::size_t m = 0; m < 6; ++m) CHECK(y1[0][m] == h1.at(m, 0));

    const auto h2 = draw_channel(ChannelProfile({0.6, 0.4}), 6, rng);
    const std::vector<double> two{1.0, 1.0};
    const auto y2 = transmit(two, h2, quiet, rng);
    for (std::size_t m = 0; m < 6; ++m) {
        CHECK(y2[0][m] == h2.at(m, 0));
        CHECK(std::abs(y2[1][m] - (h2.at(m, 0) + h2.at(m, 1))) < 1e-15);
    }

    CHECK_THROWS_AS(transmit(std::vector<double>{}, h2, quiet, rng), InvalidArgument);
}

TEST_CASE("transmit is linear in the symbols when noise is zero") {
    Rng rng = make_stream(3, 0);
    const auto h = draw_channel(make_exponential_profile(4, 0.5), 5, rng);
    const std::vector<double> a{0.3, 1.0, 0.0, 2.0, 0.7, 1.1};
    const std::vector<double> b{1.5, 0.2, 0.9, 0.0, 0.4, 2.2};
    std::vector<double> sum(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) sum[i] = 2.0 * a[i] + b[i];
    const NoiseModel quiet{0.0, 0.0};
    const auto ya = transmit(a, h, quiet, rng), yb = transmit(b, h, quiet, rng), ys = transmit(sum, h, quiet, rng);
    for (std::size_t t = 0; t < a.size(); ++t)
        for (std::size_t m = 0; m < 5; ++m) CHECK(std::abs(ys[t][m] - (2.0 * ya[t][m] + yb[t][m])) < 1e-12);
}

TEST_CASE("transmit is deterministic for a seed") {
    const auto p = make_exponential_profile(2, 1.0);
    const std::vector<double> s{1.0, 0.5, 0.0, 1.2};
    auto once = [&] {
        Rng rng = make_stream(9, 1);
        const auto h = draw_channel(p, 4, rng);
        return transmit(s, h, NoiseModel::from_snr_db(3.0), rng);
    };
    CHECK(once() == once());
}

TEST_CASE("per-antenna received power matches its expectation") {
    const auto p = make_exponential_profile(3, 0.7);
    const NoiseModel noise = NoiseModel::from_snr_db(2.0);
    const std::vector<double> s{1.2, 0.4, 0.9, 1.5};
    Rng rng = make_stream(21, 0);
    const int M = 20000;
    const auto h = draw_channel(p, M, rng);
    const auto y = transmit(s, h, noise, rng);
    for (std::size_t t = 0; t < s.size(); ++t) {
        std::vector<double> power(M);
        for (int m = 0; m < M; ++m) power[static_cast<std::size_t>(m)] = std::norm(y[t][static_cast<std::size_t>(m)]);
        double expected = noise.sigma_n_sq;
        for (std::size_t l = 0; l < p.taps() && l <= t; ++l) expected += p.variance(l) * s[t - l] * s[t - l];
        const auto mo = oracle::moments(power);
        CHECK(std::abs(mo.mean - expected) < 3.0 * mo.sd / std::sqrt(static_cast<double>(M)));
    }
}

}
