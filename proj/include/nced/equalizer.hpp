#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nced/channel.hpp"

namespace nced {

/// Zero-forcing filter for the antenna-averaged energy sequence. It is
/// built from the tap variances alone, so one equalizer serves every block.
struct Equalizer {
    std::vector<double> coeffs;  ///< w_0 .. w_{J-1}
    double w = 0.0;              ///< sum of coeffs
    int delay = 1;               ///< 1-based position of the unit target
    int length = 0;              ///< J

    /// sum_j coeffs[j]^2, the noise gain of the filter.
    double noise_gain() const;
};

/// J = 4(L-1)+1.
int default_equalizer_length(int taps);

/// Banded Toeplitz convolution matrix, J x (J+L-1): row j holds the tap
/// variances starting at column j.
Eigen::MatrixXd build_G(const ChannelProfile& profile, int length);

/// Least-squares zero-forcing filter for target delay d: minimises
/// || w G - e_d ||_2 through the J x J normal equations (G G^T) w^T = G e_d^T,
/// solved by Cholesky. Throws NumericalFailure when the reciprocal condition
/// estimate of G G^T falls below 1e-12.
Equalizer build_zf(const ChannelProfile& profile, int length, int delay);

/// Delay with the smallest zero-forcing residual || w G - e_d ||_2^2;
/// ties (including residual norms below 1e-12) go to the smaller delay.
int select_delay(const ChannelProfile& profile, int length);

/// || coeffs * G - e_d ||_inf for a built equalizer.
double zf_residual(const Equalizer& eq, const ChannelProfile& profile);

/// Convenience: default length, selected delay.
Equalizer design_equalizer(const ChannelProfile& profile, int length = 0);

}  // namespace nced
