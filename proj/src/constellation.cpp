#include "nced/constellation.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "nced/errors.hpp"
#include "nced/psi_stats.hpp"

namespace nced {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sigma_psi(double energy, const DesignContext& ctx) {
    return std::sqrt(psi_variance(energy, ctx.profile, ctx.sigma_n_sq, ctx.M, ctx.K, ctx.w));
}

void check_context(const DesignContext& ctx) {
    if (ctx.M < 1) throw InvalidArgument("antenna count must be positive");
    if (ctx.K < 2) throw InvalidArgument("constellation size must be at least 2");
    if (!(ctx.w > 0.0) || !std::isfinite(ctx.w)) throw InvalidArgument("equalizer gain w must be positive");
    if (!(ctx.sigma_n_sq >= 0.0) || !std::isfinite(ctx.sigma_n_sq))
        throw InvalidArgument("noise variance must be finite and non-negative");
}

DecisionRule rule_from_margins(std::span<const double> means, std::vector<double> left,
                               std::vector<double> right) {
    const std::size_t K = means.size();
    DecisionRule rule;
    rule.lower.resize(K);
    rule.upper.resize(K);
    left.front() = kInf;
    right.back() = kInf;
    for (std::size_t i = 0; i < K; ++i) {
        rule.lower[i] = i == 0 ? -kInf : means[i] - left[i];
        rule.upper[i] = i + 1 == K ? kInf : means[i] + right[i];
    }
    rule.margin_left = std::move(left);
    rule.margin_right = std::move(right);
    return rule;
}

}  // namespace

Constellation::Constellation(std::vector<double> energies) : energies_(std::move(energies)) {
    if (energies_.empty()) throw InvalidArgument("constellation needs at least one point");
    for (std::size_t i = 0; i < energies_.size(); ++i) {
        const double p = energies_[i];
        if (!std::isfinite(p) || p < 0.0) throw InvalidArgument("energies must be finite and non-negative");
        if (i > 0 && p < energies_[i - 1]) throw InvalidArgument("energies must be non-decreasing");
    }
}

std::vector<double> Constellation::amplitudes() const {
    std::vector<double> out;
    out.reserve(energies_.size());
    for (double p : energies_) out.push_back(std::sqrt(p));
    return out;
}

double Constellation::mean_power() const {
    return std::accumulate(energies_.begin(), energies_.end(), 0.0) / static_cast<double>(energies_.size());
}

std::vector<double> DecisionRule::boundaries() const {
    if (upper.empty()) return {};
    return {upper.begin(), upper.end() - 1};
}

bool DecisionRule::contiguous(double tol) const {
    if (lower.size() != upper.size() || lower.empty()) return false;
    if (lower.front() != -kInf || upper.back() != kInf) return false;
    for (std::size_t i = 0; i + 1 < upper.size(); ++i) {
        const double scale = std::max(1.0, std::abs(upper[i]));
        if (std::abs(upper[i] - lower[i + 1]) > tol * scale) return false;
        if (!(lower[i] < upper[i])) return false;
    }
    return true;
}

double pam_epsilon(int K) {
    if (K < 2) throw InvalidArgument("PAM needs K >= 2");
    return 6.0 / ((K - 1.0) * (2.0 * K - 1.0));
}

Constellation pam_constellation(int K) {
    const double eps = pam_epsilon(K);
    std::vector<double> energies(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) energies[static_cast<std::size_t>(k)] = static_cast<double>(k) * k * eps;
    return Constellation(std::move(energies));
}

double pam_half_gap(int k, int K) {
    if (k < 0 || k > K - 2) throw InvalidArgument("PAM half-gap index outside 0..K-2");
    return (2.0 * k + 1.0) / 2.0 * pam_epsilon(K);
}

DecisionRule pam_thresholds(int K, double w, double sigma_n_sq) {
    const Constellation pam = pam_constellation(K);
    std::vector<double> means(pam.energies().begin(), pam.energies().end());
    for (double& m : means) m += w * sigma_n_sq;
    std::vector<double> left(static_cast<std::size_t>(K)), right(static_cast<std::size_t>(K));
    for (int k = 0; k + 1 < K; ++k) {
        const double gap = pam_half_gap(k, K);
        right[static_cast<std::size_t>(k)] = gap;
        left[static_cast<std::size_t>(k + 1)] = gap;
    }
    return rule_from_margins(means, std::move(left), std::move(right));
}

double t_upper_bound(const DesignContext& ctx) {
    check_context(ctx);
    return std::sqrt(ctx.M / 2.0) / (ctx.w * ctx.profile.variance(0));
}

QuadraticCoefficients quadratic_coefficients(double energy, double T, const DesignContext& ctx) {
    check_context(ctx);
    if (!(T > 0.0)) throw InvalidArgument("T must be positive");
    const double s0 = ctx.profile.variance(0);
    const double s1 = ctx.profile.interference_power();
    const double k = static_cast<double>(ctx.K);
    const double w2m = ctx.w * ctx.w / ctx.M;
    const double sn2 = ctx.sigma_n_sq;
    const double sp = sigma_psi(energy, ctx);

    const double a = w2m * s0 * s0 - 1.0 / (2.0 * T * T);
    const double b = energy / (T * T) + std::sqrt(2.0) * sp / T + 2.0 * w2m * s0 * sn2 +
                     2.0 * w2m * s0 / k * s1;
    const double c1 = w2m * (ctx.profile.interference_fourth_moment() / (k * k) +
                             ctx.profile.interference_cross_moment() / (k * k) + 2.0 / k * s1 * sn2 +
                             sn2 * sn2);
    const double c2 = energy / (std::sqrt(2.0) * T) + sp;
    return {a, b, c1 - c2 * c2};
}

double next_point(double energy, double T, const DesignContext& ctx) {
    if (!(energy >= 0.0) || !std::isfinite(energy)) throw InvalidArgument("energy must be non-negative");
    const double t_hi = t_upper_bound(ctx);
    if (!(T > 0.0 && T < t_hi)) {
        std::ostringstream msg;
        msg << "T = " << T << " outside (0, " << t_hi << ")";
        throw InvalidArgument(msg.str());
    }
    const double root_m = std::sqrt(static_cast<double>(ctx.M));
    const double r2t = std::sqrt(2.0) * T;
    const double isi = ctx.w / ctx.K * ctx.profile.interference_power();
    const double num = r2t * (root_m * sigma_psi(energy, ctx) + ctx.w * ctx.sigma_n_sq + isi) + root_m * energy;
    return num / (root_m - r2t * ctx.w * ctx.profile.variance(0));
}

std::vector<double> points_for_T(double T, const DesignContext& ctx, double first_energy) {
    std::vector<double> p(static_cast<std::size_t>(ctx.K));
    p[0] = first_energy;
    for (std::size_t i = 1; i < p.size(); ++i) p[i] = next_point(p[i - 1], T, ctx);
    return p;
}

DecisionRule thresholds_from_T(const Constellation& constellation, double t_max, const DesignContext& ctx) {
    check_context(ctx);
    const auto energies = constellation.energies();
    const std::size_t K = energies.size();
    std::vector<double> means(K), margin(K);
    for (std::size_t i = 0; i < K; ++i) {
        means[i] = energies[i] + ctx.w * ctx.sigma_n_sq;
        margin[i] = std::sqrt(2.0) * t_max * sigma_psi(energies[i], ctx);
    }
    return rule_from_margins(means, margin, margin);
}

OptimizerResult optimize(const DesignContext& ctx, const OptimizerOptions& options) {
    check_context(ctx);
    if (!(options.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
    if (options.max_iterations < 1) throw InvalidArgument("max_iterations must be positive");

    double t_lower = 0.0;
    double t_upper = t_upper_bound(ctx);
    double T = 0.0;
    double mean = 0.0;
    std::vector<double> p(static_cast<std::size_t>(ctx.K), options.first_energy);
    int iterations = 0;

    while (std::abs(t_upper - t_lower) >= options.tolerance || std::abs(mean - 1.0) >= options.tolerance) {
        if (iterations == options.max_iterations) {
            std::ostringstream msg;
            msg << "bisection did not converge in " << iterations << " iterations; bracket [" << t_lower
                << ", " << t_upper << "], mean power " << mean;
            throw ConvergenceFailure(msg.str(), t_lower, t_upper);
        }
        T = 0.5 * (t_upper + t_lower);
        p = points_for_T(T, ctx, options.first_energy);
        mean = std::accumulate(p.begin(), p.end(), 0.0) / ctx.K;
        if (mean >= 1.0)
            t_upper = T;
        else
            t_lower = T;
        ++iterations;
    }

    OptimizerResult result;
    result.constellation = Constellation(p);
    result.t_max = T;
    result.decision_rule = thresholds_from_T(result.constellation, T, ctx);
    result.iterations = iterations;
    result.converged = true;
    result.t_lower = t_lower;
    result.t_upper = t_upper;
    return result;
}

}  // namespace nced
