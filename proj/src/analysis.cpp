#include "nced/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "nced/errors.hpp"
#include "nced/psi_stats.hpp"
#include "nced/special.hpp"

namespace nced {

namespace {

constexpr double kLog10e = std::numbers::log10e;

void check_rule(const DecisionRule& rule, std::size_t n) {
    if (rule.size() == 0) throw InvalidArgument("empty decision rule");
    if (rule.margin_left.size() != rule.upper.size() || rule.margin_right.size() != rule.upper.size())
        throw InvalidArgument("decision rule margins are incomplete");
    if (n != rule.upper.size()) throw InvalidArgument("one variance per constellation point is required");
}

// erfc(margin / scale) with an infinite margin giving 0
double tail(double margin, double scale) {
    if (std::isinf(margin)) return 0.0;
    return std::erfc(margin / scale);
}

double log10_tail(double margin, double scale) {
    if (std::isinf(margin)) return -std::numeric_limits<double>::infinity();
    return log10_erfc(margin / scale);
}

double sigma_psi(double energy, const LinkStatistics& link) {
    return std::sqrt(psi_variance(energy, link.profile, link.sigma_n_sq, link.M, link.K, link.w));
}

std::vector<double> pam_variances(const LinkStatistics& link) {
    const Constellation pam = pam_constellation(link.K);
    return psi_variances(pam.energies(), link.profile, link.sigma_n_sq, link.M, link.K, link.w);
}

}  // namespace

double ser_generic(const DecisionRule& rule, std::span<const double> psi_variances) {
    check_rule(rule, psi_variances.size());
    const std::size_t K = psi_variances.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
        const double scale = std::sqrt(2.0 * psi_variances[i]);
        acc += tail(rule.margin_left[i], scale) + tail(rule.margin_right[i], scale);
    }
    return acc / (2.0 * static_cast<double>(K));
}

double log10_ser_generic(const DecisionRule& rule, std::span<const double> psi_variances) {
    check_rule(rule, psi_variances.size());
    const std::size_t K = psi_variances.size();
    std::vector<double> terms;
    terms.reserve(2 * K);
    for (std::size_t i = 0; i < K; ++i) {
        const double scale = std::sqrt(2.0 * psi_variances[i]);
        terms.push_back(log10_tail(rule.margin_left[i], scale));
        terms.push_back(log10_tail(rule.margin_right[i], scale));
    }
    return log10_sum(terms.data(), terms.size()) - std::log10(2.0 * static_cast<double>(K));
}

double ser_opt_closed_form(double t_max, int K) {
    if (!(t_max >= 0.0)) throw InvalidArgument("T must be non-negative");
    if (K < 1) throw InvalidArgument("constellation size must be positive");
    return (K - 1.0) / K * std::erfc(t_max);
}

double log10_ser_opt_closed_form(double t_max, int K) {
    if (!(t_max >= 0.0)) throw InvalidArgument("T must be non-negative");
    if (K < 2) throw InvalidArgument("constellation size must be at least 2");
    return std::log10((K - 1.0) / K) + log10_erfc(t_max);
}

double ser_optimal(const LinkStatistics& link) {
    return ser_opt_closed_form(optimize(link.design_context()).t_max, link.K);
}

double ser_pam(const LinkStatistics& link) {
    return ser_generic(pam_thresholds(link.K, link.w, link.sigma_n_sq), pam_variances(link));
}

double log10_ser_pam(const LinkStatistics& link) {
    return log10_ser_generic(pam_thresholds(link.K, link.w, link.sigma_n_sq), pam_variances(link));
}

double BoundaryTerms::total() const {
    double acc = 0.0;
    for (double v : left) acc += v;
    for (double v : right) acc += v;
    return acc;
}

BoundaryTerms pam_error_terms(const LinkStatistics& link) {
    const DecisionRule rule = pam_thresholds(link.K, link.w, link.sigma_n_sq);
    const std::vector<double> var = pam_variances(link);
    BoundaryTerms out;
    const double norm = 1.0 / (2.0 * link.K);
    for (std::size_t i = 0; i < var.size(); ++i) {
        const double scale = std::sqrt(2.0 * var[i]);
        out.left.push_back(norm * tail(rule.margin_left[i], scale));
        out.right.push_back(norm * tail(rule.margin_right[i], scale));
    }
    return out;
}

double flat_k(double energy, double sigma_n_sq, double tap_variance) {
    const double mean = tap_variance * energy + sigma_n_sq;
    return mean * mean;
}

double ser_flat(const DecisionRule& rule, std::span<const double> k_values, int M) {
    if (M < 1) throw InvalidArgument("antenna count must be positive");
    check_rule(rule, k_values.size());
    const double root_m = std::sqrt(static_cast<double>(M));
    double acc = 0.0;
    for (std::size_t i = 0; i < k_values.size(); ++i) {
        const double scale = std::sqrt(2.0 * k_values[i]);
        acc += tail(root_m * rule.margin_left[i], scale) + tail(root_m * rule.margin_right[i], scale);
    }
    return acc / (2.0 * static_cast<double>(k_values.size()));
}

double rate_function_bound(const DecisionRule& rule, std::span<const double> k_values, int M) {
    if (M < 1) throw InvalidArgument("antenna count must be positive");
    check_rule(rule, k_values.size());
    auto term = [M](double d, double k) { return std::isinf(d) ? 0.0 : std::exp(-M * d * d / (2.0 * k)); };
    double acc = 0.0;
    for (std::size_t i = 0; i < k_values.size(); ++i)
        acc += term(rule.margin_right[i], k_values[i]) + term(rule.margin_left[i], k_values[i]);
    return acc / static_cast<double>(k_values.size());
}

AsymptoticReport log_ser_slope_vs_M(Design design, const LinkStatistics& link) {
    AsymptoticReport r;
    const double K = link.K;
    const double M = link.M;
    const bool has_floor = link.profile.taps() > 1 &&
                           link.profile.interference_fourth_moment() + link.profile.interference_cross_moment() > 0.0;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    if (design == Design::optimal) {
        const OptimizerResult opt = optimize(link.design_context());
        const double T = opt.t_max;
        // d^2 / (2 w^2 zeta) is the same at every point and equals T^2 / M
        r.slope_vs_M = -T * T / M * kLog10e;
        r.intercept = std::log10((K - 1.0) / (K * std::sqrt(std::numbers::pi))) + std::log10(std::sqrt(M) / T);
        r.zeta = zeta(opt.constellation.energy(0), link.profile, link.sigma_n_sq, link.K);
        r.descent_x = T;
        r.t_max_floor = has_floor ? t_max_error_floor(opt.decision_rule.margin_right[0], link.K, link.M,
                                                      link.profile, link.w)
                                  : nan;
    } else {
        const double eps = pam_epsilon(link.K);
        const double d = 0.5 * eps;
        const double z2 = zeta(eps, link.profile, link.sigma_n_sq, link.K);
        r.slope_vs_M = -d * d / (2.0 * link.w * link.w * z2) * kLog10e;
        r.intercept = std::log10(std::sqrt(z2 / (2.0 * std::numbers::pi)) * link.w / (K * d));
        r.zeta = z2;
        r.descent_x = d / (std::sqrt(2.0) * sigma_psi(eps, link));
        r.t_max_floor = has_floor ? t_max_error_floor(d, link.K, link.M, link.profile, link.w) : nan;
    }
    return r;
}

double descent_model(double x) {
    if (!(x > 0.0)) throw InvalidArgument("descent model needs x > 0");
    return -x * x * kLog10e - std::log10(x);
}

std::pair<double, double> descent_derivatives(double x) {
    if (!(x > 0.0)) throw InvalidArgument("descent model needs x > 0");
    const double first = -2.0 * x * kLog10e - 1.0 / (x * std::numbers::ln10);
    const double second = -2.0 * kLog10e + 1.0 / (x * x * std::numbers::ln10);
    return {first, second};
}

double t_max_error_floor(double d_r1, int K, int M, const ChannelProfile& profile, double w) {
    if (profile.taps() < 2) throw DomainError("no ISI floor in flat fading");
    const double isi = profile.interference_fourth_moment() + profile.interference_cross_moment();
    if (!(isi > 0.0)) throw DomainError("no ISI floor without interfering taps");
    if (M < 1 || K < 1 || !(w > 0.0)) throw InvalidArgument("invalid floor parameters");
    return d_r1 * K * std::sqrt(static_cast<double>(M)) / (std::sqrt(2.0) * w * std::sqrt(isi));
}

namespace {

struct AlphaTerms {
    double D;
    double E;
    double F;
};

AlphaTerms alpha_terms(const LinkStatistics& link) {
    const double s0 = link.profile.variance(0);
    const double s1 = link.profile.interference_power();
    const double D = s0 * s0;
    const double E = 2.0 * s0 * link.sigma_n_sq + 2.0 / link.K * s0 * s1;
    const double F = zeta(0.0, link.profile, link.sigma_n_sq, link.K);
    return {D, E, F};
}

}  // namespace

double pam_ratio_alpha(int i, const LinkStatistics& link) {
    if (i < 1 || i > link.K) throw InvalidArgument("alpha index outside 1..K");
    const auto [D, E, F] = alpha_terms(link);
    const double eps = pam_epsilon(link.K);
    const double x = i;
    const double num = x * x + x + 0.25;
    const double den = x * x * x * x + E / (D * eps) * x * x + F / (D * eps * eps);
    return link.w * link.w * link.M / D * num / den;
}

double pam_alpha_endpoint_ratio(const LinkStatistics& link) {
    const auto [D, E, F] = alpha_terms(link);
    const double K = link.K;
    const double c = (K - 1.0) * (2.0 * K - 1.0);
    const double G = (F * c * c + 6.0 * E * c + 36.0 * D) / (36.0 * D * K * K * K * K + F * c * c + 6.0 * E * K * K * c);
    const double lead = (2.0 * K + 1.0) / 3.0;
    return lead * lead * G;
}

double pam_margin_ratio(int i, const LinkStatistics& link) {
    if (i < 2 || i > link.K) throw InvalidArgument("PAM left margin exists for points 2..K");
    const double eps = pam_epsilon(link.K);
    const double d = pam_half_gap(i - 2, link.K);
    const double p = (i - 1.0) * (i - 1.0) * eps;
    return d * d / zeta(p, link.profile, link.sigma_n_sq, link.K);
}

}  // namespace nced
