#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nced/channel.hpp"
#include "nced/constellation.hpp"

namespace nced {

/// Link parameters shared by the closed-form expressions.
struct LinkStatistics {
    int M = 100;
    int K = 4;
    ChannelProfile profile{std::vector<double>{1.0}};
    double sigma_n_sq = 1.0;
    double w = 1.0;

    DesignContext design_context() const { return {M, K, profile, sigma_n_sq, w}; }
};

/// Error probability of a decision rule with Gaussian psi:
///   (1/2K) sum_i [erfc(d_L,i / (sqrt2 s_i)) + erfc(d_R,i / (sqrt2 s_i))]
/// which is 1 - (1/2K) sum_i [erf(.) + erf(.)]; infinite margins add nothing.
/// psi_variances[i] is sigma_psi^2(p_i).
double ser_generic(const DecisionRule& rule, std::span<const double> psi_variances);

/// log10 of ser_generic, finite far below the double range.
double log10_ser_generic(const DecisionRule& rule, std::span<const double> psi_variances);

/// ((K-1)/K) erfc(T), the error rate of the equal-error design.
double ser_opt_closed_form(double t_max, int K);
double log10_ser_opt_closed_form(double t_max, int K);

/// Optimizes the constellation for the link and returns its closed-form SER.
double ser_optimal(const LinkStatistics& link);

/// Non-negative PAM with midpoint thresholds.
double ser_pam(const LinkStatistics& link);
double log10_ser_pam(const LinkStatistics& link);

/// Per-point error contributions (1/2K) erfc(.) of PAM, left and right.
struct BoundaryTerms {
    std::vector<double> left;
    std::vector<double> right;
    double total() const;
};
BoundaryTerms pam_error_terms(const LinkStatistics& link);

/// Variance of |h s + n|^2 for a flat channel: (s0^2 p + sn^2)^2.
double flat_k(double energy, double sigma_n_sq, double tap_variance = 1.0);

/// Flat-fading SER from per-point k values:
///   (1/2K) sum_i [erfc(sqrt(M) d_L,i / sqrt(2 k_i)) + erfc(sqrt(M) d_R,i / sqrt(2 k_i))].
double ser_flat(const DecisionRule& rule, std::span<const double> k_values, int M);

/// (1/K) sum_i [exp(-M d_R,i^2 / (2 k_i)) + exp(-M d_L,i^2 / (2 k_i))].
double rate_function_bound(const DecisionRule& rule, std::span<const double> k_values, int M);

enum class Design { optimal, pam };

/// Large-M description of log10 SER for one design:
///   log10 SER ~ slope_vs_M * M - 0.5 log10 M + intercept.
/// zeta is evaluated at the critical point (p_1 for the optimal design, the
/// second PAM point for PAM), descent_x is d / (sqrt2 sigma_psi) there at
/// link.M, and t_max_floor is the high-SNR T of the design (NaN for L = 1).
struct AsymptoticReport {
    double slope_vs_M = 0.0;
    double intercept = 0.0;
    double zeta = 0.0;
    double t_max_floor = 0.0;
    double descent_x = 0.0;
};
AsymptoticReport log_ser_slope_vs_M(Design design, const LinkStatistics& link);

/// D(x) = -x^2 log10(e) - log10(x).
double descent_model(double x);
/// (dD/dx, d2D/dx2).
std::pair<double, double> descent_derivatives(double x);

/// High-SNR limit of T for a design whose first point is zero:
///   d_R,1 K sqrt(M) / (sqrt2 w sqrt(S2 + X)).
/// Throws DomainError for a single-tap profile.
double t_max_error_floor(double d_r1, int K, int M, const ChannelProfile& profile, double w);

/// Endpoint function for the PAM margin ordering,
///   alpha(i) = (w^2 M / D) (i^2 + i + 1/4) / (i^4 + E i^2 / (D eps) + F / (D eps^2)),
/// with D = s0^4, E = 2 s0^2 sn^2 + (2/K) s0^2 S1, F = zeta(0).
double pam_ratio_alpha(int i, const LinkStatistics& link);

/// ((2K+1)/3)^2 G(K), the closed form of alpha(K) / alpha(1).
double pam_alpha_endpoint_ratio(const LinkStatistics& link);

/// d_L,i^2 / zeta(p_i) for PAM point i (1-based, 2..K) with midpoint margins.
double pam_margin_ratio(int i, const LinkStatistics& link);

}  // namespace nced
