#pragma once

#include <span>
#include <vector>

#include "nced/channel.hpp"

namespace nced {

/// Statistics of the equalized decision metric psi(t) for one transmitted
/// energy level.
struct PsiStats {
    double mean = 0.0;      ///< p + w sigma_n^2
    double variance = 0.0;  ///< closed-form variance, see psi_variance
};

/// Energy-dependent part of the psi variance:
///   zeta(p) = s0^4 p^2 + (2 s0^2 sn^2 + (2/K) s0^2 S1) p
///           + S2/K^2 + X/K^2 + (2/K) S1 sn^2 + sn^4
/// with s0^2 the first tap, S1 = sum_{l>=1} s_l^2, S2 = sum_{l>=1} s_l^4,
/// X the ordered cross sum over l != l' >= 1. Interfering symbols enter
/// with weight 1/K.
double zeta(double energy, const ChannelProfile& profile, double sigma_n_sq, int K);

/// sigma_psi^2(p) = (w^2 / M) zeta(p).
double psi_variance(double energy, const ChannelProfile& profile, double sigma_n_sq, int M, int K,
                    double w);

PsiStats psi_stats(double energy, const ChannelProfile& profile, double sigma_n_sq, int M, int K,
                   double w);

/// Diagnostic variant that charges the filter's full noise gain
/// sum_j w_j^2 instead of (sum_j w_j)^2. Not used by any SER formula.
double exact_psi_variance(double energy, const ChannelProfile& profile, double sigma_n_sq, int M,
                          int K, std::span<const double> coeffs);

/// psi_variance evaluated at each energy.
std::vector<double> psi_variances(std::span<const double> energies, const ChannelProfile& profile,
                                  double sigma_n_sq, int M, int K, double w);

}  // namespace nced
