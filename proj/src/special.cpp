#include "nced/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nced {

namespace {

// Lentz evaluation of erfc(x) * sqrt(pi) * exp(x^2) for x > 0:
//   erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
double erfc_scaled_cf(double x) {
    constexpr double tiny = 1e-300;
    double f = x;
    double c = x;
    double d = 0.0;
    for (int n = 1; n < 500; ++n) {
        const double a = 0.5 * n;
        d = x + a * d;
        if (std::abs(d) < tiny) d = tiny;
        c = x + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return 1.0 / f;
}

}  // namespace

double log_erfc(double x) {
    if (std::isinf(x)) return x > 0 ? -std::numeric_limits<double>::infinity() : std::log(2.0);
    if (x < 20.0) return std::log(std::erfc(x));
    return -x * x - 0.5 * std::log(std::numbers::pi) + std::log(erfc_scaled_cf(x));
}

double log10_erfc(double x) { return log_erfc(x) / std::numbers::ln10; }

double erfc_asymptote(double x) {
    return std::exp(-x * x) / (std::sqrt(std::numbers::pi) * x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double log10_sum(const double* terms, std::size_t n) {
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, terms[i]);
    if (std::isinf(peak)) return peak;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::isinf(terms[i])) continue;
        acc += std::pow(10.0, terms[i] - peak);
    }
    return peak + std::log10(acc);
}

}  // namespace nced
