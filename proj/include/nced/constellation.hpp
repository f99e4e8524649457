#pragma once

#include <span>
#include <vector>

#include "nced/channel.hpp"

namespace nced {

/// Non-negative energy levels p_1 <= ... <= p_K; the transmitted
/// amplitudes are their square roots.
class Constellation {
public:
    /// Throws InvalidArgument on negative, non-finite or decreasing energies.
    explicit Constellation(std::vector<double> energies);

    int size() const noexcept { return static_cast<int>(energies_.size()); }
    std::span<const double> energies() const noexcept { return energies_; }
    double energy(int i) const { return energies_.at(static_cast<std::size_t>(i)); }
    std::vector<double> amplitudes() const;
    double mean_power() const;

private:
    std::vector<double> energies_;
};

/// Decoding regions in the equalized-energy domain. Vectors are indexed by
/// constellation point (0-based). Region i is (lower[i], upper[i]];
/// lower[0] = -inf and upper[K-1] = +inf. The margins are the distances from
/// each point's psi mean to its boundaries (infinite at the edges).
struct DecisionRule {
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> margin_left;
    std::vector<double> margin_right;

    int size() const noexcept { return static_cast<int>(upper.size()); }
    /// The K-1 finite boundaries upper[0..K-2].
    std::vector<double> boundaries() const;
    /// True when upper[i] == lower[i+1] to within tol for every i.
    bool contiguous(double tol = 1e-9) const;
};

/// Everything the constellation recursion depends on besides T.
struct DesignContext {
    int M = 100;
    int K = 4;
    ChannelProfile profile{std::vector<double>{1.0}};
    double sigma_n_sq = 1.0;
    double w = 1.0;
};

struct OptimizerOptions {
    double tolerance = 1e-3;
    int max_iterations = 200;
    double first_energy = 0.0;
};

struct OptimizerResult {
    Constellation constellation{std::vector<double>{0.0}};
    double t_max = 0.0;
    DecisionRule decision_rule;
    int iterations = 0;
    bool converged = false;
    double t_lower = 0.0;
    double t_upper = 0.0;
};

/// Non-negative PAM with unit mean power: amplitudes k sqrt(eps),
/// k = 0..K-1, eps = 6 / ((K-1)(2K-1)).
Constellation pam_constellation(int K);

double pam_epsilon(int K);

/// Half-gap to the right of the PAM point with amplitude index k (0-based),
/// (2k+1)/2 eps. Equals the left half-gap of point k+1.
double pam_half_gap(int k, int K);

/// Midpoint-in-energy boundaries around psi means p_i + w sigma_n^2.
DecisionRule pam_thresholds(int K, double w, double sigma_n_sq);

/// Exclusive upper end of the admissible T range, sqrt(M/2) / (w s0^2).
double t_upper_bound(const DesignContext& ctx);

/// Coefficients of A p'^2 + B p' + C = 0, the squared form of
/// p' - p = sqrt(2) T (sigma_psi(p') + sigma_psi(p)).
struct QuadraticCoefficients {
    double a;
    double b;
    double c;
};
QuadraticCoefficients quadratic_coefficients(double energy, double T, const DesignContext& ctx);

/// Next energy level for a given T: the root of the quadratic above that
/// differs from p,
///   p' = (sqrt(2) T (sqrt(M) sigma_psi(p) + w sn^2 + (w/K) S1) + sqrt(M) p)
///        / (sqrt(M) - sqrt(2) T w s0^2).
/// Throws InvalidArgument unless 0 < T < t_upper_bound(ctx) and p >= 0.
double next_point(double energy, double T, const DesignContext& ctx);

/// p_1 .. p_K generated from first_energy by repeated next_point.
std::vector<double> points_for_T(double T, const DesignContext& ctx, double first_energy = 0.0);

/// Regions with d_L,i = d_R,i = sqrt(2) T sigma_psi(p_i).
DecisionRule thresholds_from_T(const Constellation& constellation, double t_max,
                               const DesignContext& ctx);

/// Bisection on T until both the bracket and the mean-power residual are
/// below the tolerance. Throws ConvergenceFailure after max_iterations.
OptimizerResult optimize(const DesignContext& ctx, const OptimizerOptions& options = {});

}  // namespace nced
