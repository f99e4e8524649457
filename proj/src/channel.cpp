#include "nced/channel.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "nced/errors.hpp"

namespace nced {

Rng make_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_index),
                      static_cast<std::uint32_t>(stream_index >> 32)};
    return Rng(seq);
}

ChannelProfile::ChannelProfile(std::vector<double> tap_variances)
    : variances_(std::move(tap_variances)) {
    if (variances_.empty()) throw InvalidArgument("channel profile needs at least one tap");
    for (double v : variances_) {
        if (!std::isfinite(v) || v < 0.0)
            throw InvalidArgument("tap variances must be finite and non-negative");
    }
    if (!(variances_.front() > 0.0)) throw InvalidArgument("first tap variance must be positive");
}

double ChannelProfile::total_power() const noexcept {
    return std::accumulate(variances_.begin(), variances_.end(), 0.0);
}

double ChannelProfile::interference_power() const noexcept {
    return std::accumulate(variances_.begin() + 1, variances_.end(), 0.0);
}

double ChannelProfile::interference_fourth_moment() const noexcept {
    double acc = 0.0;
    for (std::size_t l = 1; l < variances_.size(); ++l) acc += variances_[l] * variances_[l];
    return acc;
}

double ChannelProfile::interference_cross_moment() const noexcept {
    double acc = 0.0;
    for (std::size_t l = 1; l < variances_.size(); ++l)
        for (std::size_t k = 1; k < variances_.size(); ++k)
            if (l != k) acc += variances_[l] * variances_[k];
    return acc;
}

NoiseModel NoiseModel::from_snr_db(double snr_db) {
    if (!std::isfinite(snr_db)) throw InvalidArgument("snr_db must be finite");
    return {snr_db, std::pow(10.0, -snr_db / 10.0)};
}

NoiseModel NoiseModel::from_variance(double sigma_n_sq) {
    if (!(sigma_n_sq > 0.0) || !std::isfinite(sigma_n_sq))
        throw InvalidArgument("noise variance must be positive");
    return {-10.0 * std::log10(sigma_n_sq), sigma_n_sq};
}

ChannelRealization::ChannelRealization(std::size_t antennas, std::size_t taps)
    : antennas_(antennas), taps_(taps), data_(antennas * taps) {}

ChannelProfile make_exponential_profile(int taps, double decay) {
    if (taps < 1) throw InvalidArgument("tap count must be positive, got " + std::to_string(taps));
    if (!(decay > 0.0)) throw InvalidArgument("decay must be positive");
    std::vector<double> v(static_cast<std::size_t>(taps));
    for (int l = 0; l < taps; ++l) v[static_cast<std::size_t>(l)] = std::exp(-decay * l);
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    for (double& x : v) x /= total;
    return ChannelProfile(std::move(v));
}

ChannelRealization draw_channel(const ChannelProfile& profile, int antennas, Rng& rng) {
    if (antennas < 1) throw InvalidArgument("antenna count must be positive");
    ChannelRealization h(static_cast<std::size_t>(antennas), profile.taps());
    ComplexGaussian draw(rng);
    for (std::size_t m = 0; m < h.antennas(); ++m)
        for (std::size_t l = 0; l < h.taps(); ++l) h.at(m, l) = draw(profile.variance(l));
    return h;
}

std::vector<std::vector<cdouble>> transmit(std::span<const double> amplitudes,
                                           const ChannelRealization& channel,
                                           const NoiseModel& noise, Rng& rng) {
    if (amplitudes.empty()) throw InvalidArgument("symbol sequence is empty");
    const std::size_t M = channel.antennas();
    const std::size_t L = channel.taps();
    std::vector<std::vector<cdouble>> out(amplitudes.size(), std::vector<cdouble>(M));
    ComplexGaussian draw(rng);
    for (std::size_t t = 0; t < amplitudes.size(); ++t) {
        auto& y = out[t];
        for (std::size_t m = 0; m < M; ++m) {
            cdouble acc = draw(noise.sigma_n_sq);
            for (std::size_t l = 0; l < L && l <= t; ++l) acc += channel.at(m, l) * amplitudes[t - l];
            y[m] = acc;
        }
    }
    return out;
}

}  // namespace nced
