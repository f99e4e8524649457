#include "nced/receiver.hpp"

#include <algorithm>
#include <complex>

#include "nced/errors.hpp"

namespace nced {

double energy_metric(std::span<const cdouble> received) {
    if (received.empty()) throw InvalidArgument("received vector is empty");
    double acc = 0.0;
    for (const cdouble& y : received) acc += std::norm(y);
    return acc / static_cast<double>(received.size());
}

std::vector<double> energy_sequence(const std::vector<std::vector<cdouble>>& received) {
    std::vector<double> z;
    z.reserve(received.size());
    for (const auto& y : received) z.push_back(energy_metric(y));
    return z;
}

EnergyDecomposition decompose_energy(std::span<const double> amplitudes, const ChannelRealization& channel,
                                     const std::vector<std::vector<cdouble>>& noise, std::size_t t) {
    if (t >= amplitudes.size() || t >= noise.size()) throw InvalidArgument("time index out of range");
    const std::size_t M = channel.antennas();
    const std::size_t L = channel.taps();
    if (noise[t].size() != M) throw InvalidArgument("noise vector length differs from antenna count");

    auto symbol = [&](std::size_t l) { return l <= t ? amplitudes[t - l] : 0.0; };

    EnergyDecomposition out;
    for (std::size_t m = 0; m < M; ++m) {
        const cdouble n = noise[t][m];
        out.desired += std::norm(channel.at(m, 0)) * symbol(0) * symbol(0);
        for (std::size_t l = 1; l < L; ++l) out.isi1 += std::norm(channel.at(m, l)) * symbol(l) * symbol(l);
        for (std::size_t l = 0; l < L; ++l) {
            for (std::size_t k = 0; k < L; ++k)
                if (k != l)
                    out.isi2 += symbol(l) * symbol(k) * (std::conj(channel.at(m, l)) * channel.at(m, k)).real();
            out.isi3 += 2.0 * symbol(l) * (std::conj(channel.at(m, l)) * n).real();
        }
        out.noise_component += std::norm(n);
    }
    const double scale = 1.0 / static_cast<double>(M);
    out.desired *= scale;
    out.isi1 *= scale;
    out.isi2 *= scale;
    out.isi3 *= scale;
    out.noise_component *= scale;
    return out;
}

std::vector<double> equalize(std::span<const double> z, const Equalizer& eq) {
    const std::size_t J = eq.coeffs.size();
    if (J == 0) throw InvalidArgument("equalizer has no coefficients");
    if (z.size() < J) throw InvalidArgument("sequence shorter than the equalizer");
    std::vector<double> psi(z.size() - J + 1);
    for (std::size_t n = 0; n < psi.size(); ++n) {
        double acc = 0.0;
        for (std::size_t j = 0; j < J; ++j) acc += eq.coeffs[j] * z[n + J - 1 - j];
        psi[n] = acc;
    }
    return psi;
}

std::size_t equalized_symbol_index(std::size_t n, const Equalizer& eq) {
    return n + static_cast<std::size_t>(eq.length) - static_cast<std::size_t>(eq.delay);
}

int decode(double psi, const DecisionRule& rule) {
    if (rule.upper.empty()) throw InvalidArgument("empty decision rule");
    // region i is (upper[i-1], upper[i]], so count the boundaries strictly below psi
    const auto last = rule.upper.end() - 1;
    return 1 + static_cast<int>(std::lower_bound(rule.upper.begin(), last, psi) - rule.upper.begin());
}

}  // namespace nced
