#pragma once

#include <cstddef>

// Error-function helpers that stay usable deep in the tail.
//
// std::erf / std::erfc are correctly rounded to within an ulp or two on
// glibc, which covers the |x| <= 6 range. Beyond the point where erfc
// underflows, the natural log is evaluated from a continued fraction so
// symbol-error rates far below 1e-300 still produce finite logarithms.

namespace nced {

/// ln(erfc(x)), finite for every finite x.
double log_erfc(double x);

/// log10(erfc(x)).
double log10_erfc(double x);

/// Leading term of the large-argument expansion, exp(-x^2)/(sqrt(pi) x).
double erfc_asymptote(double x);

/// Standard normal CDF.
double normal_cdf(double x);

/// log10(sum_i 10^{terms_i}), skipping -inf entries.
double log10_sum(const double* terms, std::size_t n);

}  // namespace nced
