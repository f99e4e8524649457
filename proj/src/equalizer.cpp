#include "nced/equalizer.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "nced/errors.hpp"

namespace nced {

namespace {

constexpr double kMaxCondition = 1e12;

Eigen::RowVectorXd unit_row(Eigen::Index size, int delay) {
    Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(size);
    e(delay - 1) = 1.0;
    return e;
}

void check_length(const ChannelProfile& profile, int length) {
    if (length < static_cast<int>(profile.taps())) {
        std::ostringstream msg;
        msg << "equalizer length " << length << " is shorter than the channel (" << profile.taps()
            << " taps)";
        throw InvalidArgument(msg.str());
    }
}

}  // namespace

double Equalizer::noise_gain() const {
    return std::inner_product(coeffs.begin(), coeffs.end(), coeffs.begin(), 0.0);
}

int default_equalizer_length(int taps) { return 4 * (taps - 1) + 1; }

Eigen::MatrixXd build_G(const ChannelProfile& profile, int length) {
    if (length < 1) throw InvalidArgument("equalizer length must be positive");
    const auto L = static_cast<Eigen::Index>(profile.taps());
    const Eigen::Index J = length;
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(J, J + L - 1);
    for (Eigen::Index j = 0; j < J; ++j)
        for (Eigen::Index l = 0; l < L; ++l) G(j, j + l) = profile.variance(static_cast<std::size_t>(l));
    return G;
}

Equalizer build_zf(const ChannelProfile& profile, int length, int delay) {
    check_length(profile, length);
    const Eigen::MatrixXd G = build_G(profile, length);
    if (delay < 1 || delay > G.cols()) throw InvalidArgument("delay outside 1..J+L-1");

    const Eigen::MatrixXd gram = G * G.transpose();
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    const double rcond = llt.info() == Eigen::Success ? llt.rcond() : 0.0;
    if (!(rcond * kMaxCondition >= 1.0)) {
        std::ostringstream msg;
        msg << "G G^T is numerically singular (condition estimate "
            << (rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity()) << ")";
        throw NumericalFailure(msg.str());
    }
    const Eigen::VectorXd x = llt.solve(G.col(delay - 1));

    Equalizer eq;
    eq.coeffs.assign(x.data(), x.data() + x.size());
    eq.w = std::accumulate(eq.coeffs.begin(), eq.coeffs.end(), 0.0);
    eq.delay = delay;
    eq.length = length;
    return eq;
}

double zf_residual(const Equalizer& eq, const ChannelProfile& profile) {
    const Eigen::MatrixXd G = build_G(profile, eq.length);
    const Eigen::Map<const Eigen::RowVectorXd> w(eq.coeffs.data(), static_cast<Eigen::Index>(eq.coeffs.size()));
    return (w * G - unit_row(G.cols(), eq.delay)).cwiseAbs().maxCoeff();
}

int select_delay(const ChannelProfile& profile, int length) {
    check_length(profile, length);
    const Eigen::MatrixXd G = build_G(profile, length);
    int best = 1;
    double best_residual = std::numeric_limits<double>::infinity();
    for (int d = 1; d <= G.cols(); ++d) {
        const Equalizer eq = build_zf(profile, length, d);
        const Eigen::Map<const Eigen::RowVectorXd> w(eq.coeffs.data(), length);
        const double r = (w * G - unit_row(G.cols(), d)).squaredNorm();
        // ties within round-off keep the smaller delay
        if (r < best_residual * (1.0 - 1e-9) - 1e-24) {
            best = d;
            best_residual = r;
        }
    }
    return best;
}

Equalizer design_equalizer(const ChannelProfile& profile, int length) {
    const int J = length > 0 ? length : default_equalizer_length(static_cast<int>(profile.taps()));
    return build_zf(profile, J, select_delay(profile, J));
}

}  // namespace nced
