#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace nced {

using cdouble = std::complex<double>;

/// Random source used everywhere a draw is made. Streams are explicitly
/// passed, never global.
using Rng = std::mt19937_64;

/// Seeds an independent stream for one work unit (a block, a trial batch)
/// from a master seed.
Rng make_stream(std::uint64_t master_seed, std::uint64_t stream_index);

/// Per-tap channel variances known to both ends of the link.
class ChannelProfile {
public:
    /// Throws InvalidArgument unless there is at least one tap, every
    /// variance is finite and non-negative, and the first tap is positive.
    explicit ChannelProfile(std::vector<double> tap_variances);

    std::size_t taps() const noexcept { return variances_.size(); }
    double variance(std::size_t l) const { return variances_.at(l); }
    std::span<const double> variances() const noexcept { return variances_; }

    double total_power() const noexcept;
    /// sum_{l>=1} sigma_l^2, the power that arrives as interference.
    double interference_power() const noexcept;
    /// sum_{l>=1} sigma_l^4.
    double interference_fourth_moment() const noexcept;
    /// sum over ordered pairs l != l', both >= 1, of sigma_l^2 sigma_l'^2.
    double interference_cross_moment() const noexcept;

    friend bool operator==(const ChannelProfile&, const ChannelProfile&) = default;

private:
    std::vector<double> variances_;
};

/// Noise variance for a transmit SNR, with unit average symbol energy.
struct NoiseModel {
    double snr_db = 0.0;
    double sigma_n_sq = 1.0;

    static NoiseModel from_snr_db(double snr_db);
    static NoiseModel from_variance(double sigma_n_sq);
};

/// One block's worth of channel draws, M antennas by L taps.
class ChannelRealization {
public:
    ChannelRealization(std::size_t antennas, std::size_t taps);

    std::size_t antennas() const noexcept { return antennas_; }
    std::size_t taps() const noexcept { return taps_; }

    cdouble& at(std::size_t antenna, std::size_t tap) { return data_[antenna * taps_ + tap]; }
    const cdouble& at(std::size_t antenna, std::size_t tap) const { return data_[antenna * taps_ + tap]; }

    friend bool operator==(const ChannelRealization&, const ChannelRealization&) = default;

private:
    std::size_t antennas_;
    std::size_t taps_;
    std::vector<cdouble> data_;
};

/// CN(0, variance) sampler over a borrowed stream: real and imaginary
/// parts are independent with variance/2 each, real part drawn first.
class ComplexGaussian {
public:
    explicit ComplexGaussian(Rng& rng) : rng_(&rng) {}

    cdouble operator()(double variance) {
        const double scale = std::sqrt(variance / 2.0);
        const double re = unit_(*rng_);
        const double im = unit_(*rng_);
        return {scale * re, scale * im};
    }

private:
    Rng* rng_;
    std::normal_distribution<double> unit_{0.0, 1.0};
};

/// Exponentially decaying power-delay profile normalised to unit total
/// power: sigma_l^2 proportional to exp(-decay * l).
ChannelProfile make_exponential_profile(int taps, double decay);

/// Draws an M x L realization, column l ~ CN(0, sigma_l^2). Antenna-major
/// draw order: for each antenna, taps 0..L-1.
ChannelRealization draw_channel(const ChannelProfile& profile, int antennas, Rng& rng);

/// Passes non-negative amplitudes through the FIR channel and adds noise.
/// Symbols before the start of the sequence are zero. Output t holds the
/// M-vector y(t); noise is drawn for t = 0, 1, ... and antenna 0..M-1.
std::vector<std::vector<cdouble>> transmit(std::span<const double> amplitudes,
                                           const ChannelRealization& channel,
                                           const NoiseModel& noise, Rng& rng);

}  // namespace nced
