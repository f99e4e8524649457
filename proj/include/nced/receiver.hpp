#pragma once

#include <span>
#include <vector>

#include "nced/channel.hpp"
#include "nced/constellation.hpp"
#include "nced/equalizer.hpp"

namespace nced {

/// z(t) split into the desired term, the three interference terms and the
/// noise energy. The five fields sum to z(t).
struct EnergyDecomposition {
    double desired = 0.0;          ///< ||h_0||^2 |s(t)|^2 / M
    double isi1 = 0.0;             ///< sum_{l>=1} ||h_l||^2 |s(t-l)|^2 / M
    double isi2 = 0.0;             ///< Re sum_{l != l'} s(t-l) s(t-l') h_l^H h_l' / M
    double isi3 = 0.0;             ///< 2 Re sum_l h_l^H n(t) s(t-l) / M
    double noise_component = 0.0;  ///< ||n(t)||^2 / M

    double total() const noexcept { return desired + isi1 + isi2 + isi3 + noise_component; }
};

/// ||y||^2 / M.
double energy_metric(std::span<const cdouble> received);

/// Energy metric for each received vector.
std::vector<double> energy_sequence(const std::vector<std::vector<cdouble>>& received);

/// Evaluates the five components of z(t) for a known realization. noise[t]
/// is the M-vector n(t); amplitudes before index 0 are zero.
EnergyDecomposition decompose_energy(std::span<const double> amplitudes, const ChannelRealization& channel,
                                     const std::vector<std::vector<cdouble>>& noise, std::size_t t);

/// psi[n] = sum_j coeffs[j] z[n + J - 1 - j] for n = 0 .. size - J. Output n
/// estimates the energy of symbol equalized_symbol_index(n) plus w sn^2.
std::vector<double> equalize(std::span<const double> z, const Equalizer& eq);

/// Index of the symbol recovered at equalizer output n: n + J - d.
std::size_t equalized_symbol_index(std::size_t n, const Equalizer& eq);

/// 1-based index i with psi in (lower_i, upper_i].
int decode(double psi, const DecisionRule& rule);

}  // namespace nced
