#pragma once

// Reference computations used only by tests. They deliberately take a
// different route from the library so agreement means something.

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Bisection on a sign change of f over [lo, hi] to the given x tolerance.
double find_root(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-14);

/// Central difference f'(x) with step h.
double derivative(const std::function<double(double)>& f, double x, double h);
/// Central second difference.
double second_derivative(const std::function<double(double)>& f, double x, double h);

/// sup |F_n(x) - Phi((x - mean)/sd)| for the sample.
double ks_normal(std::vector<double> sample, double mean, double sd);
/// Same against the Gamma(shape, scale) law.
double ks_gamma(std::vector<double> sample, double shape, double scale);

struct LinearFit {
    double slope;
    double intercept;
    double r2;
};
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Minimum-norm least-squares row w with w G ~ e_d, via a complete
/// orthogonal decomposition of G^T (no normal equations).
Eigen::RowVectorXd pinv_zf(const Eigen::MatrixXd& G, int delay);

/// Convolution matrix built column by column from the tap list.
Eigen::MatrixXd convolution_rows(std::span<const double> taps, int J);

/// Expanded psi variance for a profile: the literal sums, term by term.
double psi_variance_terms(double p, std::span<const double> taps, double sn2, int M, int K, double w);

/// Exact flat-fading SER with unit equalizer gain: on one tap the energy
/// metric of point i is Gamma(M, (p_i + sn2) / M), so each point errs with
/// P(z <= lower_i) + P(z > upper_i).
double flat_exact_ser(std::span<const double> energies, std::span<const double> lower,
                      std::span<const double> upper, double sn2, int M);

/// Sample mean and unbiased standard deviation.
struct Moments {
    double mean;
    double sd;
};
Moments moments(std::span<const double> v);

}  // namespace oracle
