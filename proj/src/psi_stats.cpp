#include "nced/psi_stats.hpp"

#include <numeric>

#include "nced/errors.hpp"

namespace nced {

namespace {

void check(int M, int K) {
    if (M < 1) throw InvalidArgument("antenna count must be positive");
    if (K < 1) throw InvalidArgument("constellation size must be positive");
}

}  // namespace

double zeta(double energy, const ChannelProfile& profile, double sigma_n_sq, int K) {
    if (K < 1) throw InvalidArgument("constellation size must be positive");
    const double s0 = profile.variance(0);
    const double s1 = profile.interference_power();
    const double k = static_cast<double>(K);

    const double quadratic = s0 * s0 * energy * energy;
    const double linear = (2.0 * s0 * sigma_n_sq + 2.0 / k * s0 * s1) * energy;
    const double isi_fourth = profile.interference_fourth_moment() / (k * k);
    const double isi_cross = profile.interference_cross_moment() / (k * k);
    const double tail = 2.0 / k * s1 * sigma_n_sq + sigma_n_sq * sigma_n_sq;
    return quadratic + linear + isi_fourth + isi_cross + tail;
}

double psi_variance(double energy, const ChannelProfile& profile, double sigma_n_sq, int M, int K,
                    double w) {
    check(M, K);
    return w * w / M * zeta(energy, profile, sigma_n_sq, K);
}

PsiStats psi_stats(double energy, const ChannelProfile& profile, double sigma_n_sq, int M, int K,
                   double w) {
    return {energy + w * sigma_n_sq, psi_variance(energy, profile, sigma_n_sq, M, K, w)};
}

double exact_psi_variance(double energy, const ChannelProfile& profile, double sigma_n_sq, int M,
                          int K, std::span<const double> coeffs) {
    check(M, K);
    const double gain = std::inner_product(coeffs.begin(), coeffs.end(), coeffs.begin(), 0.0);
    return gain / M * zeta(energy, profile, sigma_n_sq, K);
}

std::vector<double> psi_variances(std::span<const double> energies, const ChannelProfile& profile,
                                  double sigma_n_sq, int M, int K, double w) {
    std::vector<double> out;
    out.reserve(energies.size());
    for (double p : energies) out.push_back(psi_variance(p, profile, sigma_n_sq, M, K, w));
    return out;
}

}  // namespace nced
