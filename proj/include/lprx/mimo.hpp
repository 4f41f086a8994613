#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lprx/codes.hpp"
#include "lprx/rng.hpp"

namespace lprx {

// Flat-fading uplink with single-antenna users: per-user complex gain
// vectors of length num_rx, drawn i.i.d. circularly symmetric Gaussian with
// per-entry variance equal to the user's power gain.
struct ComplexChannel {
    Eigen::MatrixXcd gains;         // num_rx x num_users
    std::vector<double> power_gains;

    int num_rx() const { return static_cast<int>(gains.rows()); }
    int num_users() const { return static_cast<int>(gains.cols()); }
};

// Real-field embedding: y = H x + n with H in per-user 2Nr x 2 blocks
// [[Re h, -Im h], [Im h, Re h]], x_k = [Re x~_k; Im x~_k].
struct RealChannelModel {
    Eigen::MatrixXd channel;  // 2Nr x 2Nu
    int num_rx = 0;
    int num_users = 0;

    Eigen::MatrixXd user_block(int user) const { return channel.block(0, 2 * user, 2 * num_rx, 2); }
};

struct CovarianceEstimate {
    Eigen::MatrixXd sample;  // R^ = (1/T) sum y_t y_t^T
    Eigen::MatrixXd loaded;  // R^ + gamma I
    double gamma = 0.0;
    int snapshots = 0;
};

struct ChannelEstimate {
    Eigen::MatrixXd estimate;  // H^_1, 2Nr x 2
    std::vector<int> contaminators;
    double noise_variance = 0.0;
};

ComplexChannel draw_channels(int num_rx, const std::vector<double>& power_gains, Rng& rng);

RealChannelModel complex_to_real(const ComplexChannel& channel);

// Embeds one complex column as its 2Nr x 2 rotation block.
Eigen::MatrixXd real_user_block(const Eigen::VectorXcd& gains);

// Pilot-contaminated estimate H^ = H_target + sum H_j + N^ where N^ is the
// block embedding of complex noise with the given per-real-entry variance
// (so E||N^||_F^2 = 4 Nr var and the rotation structure survives).
ChannelEstimate contaminated_estimate(const Eigen::MatrixXd& target,
                                      const std::vector<Eigen::MatrixXd>& interferers,
                                      double noise_variance, Rng& rng);

// 4-QAM Gray mapping, one column [Re; Im] per symbol:
// Re = (2 b_{2t} - 1)/sqrt(2), Im = (1 - 2 b_{2t+1})/sqrt(2) (0-based bits).
Eigen::MatrixXd map_bits_to_symbols(const BitVector& bits);
BitVector slice_symbols_to_bits(const Eigen::MatrixXd& symbols);

// y_t = sum_k H_k x_{k,t} + n_t with i.i.d. N(0, noise_variance) per real
// dimension. Every user supplies a 2 x T symbol matrix.
Eigen::MatrixXd transmit_frame(const RealChannelModel& model,
                               const std::vector<Eigen::MatrixXd>& user_symbols,
                               double noise_variance, Rng& rng);

CovarianceEstimate estimate_covariance(const Eigen::MatrixXd& snapshots, double gamma);

// Noise variance per real dimension for a target SNR, defined as the
// per-receive-antenna average signal power of the target user (gain * unit
// symbol energy) over the total complex noise power 2 sigma^2.
double noise_variance_for_snr_db(double snr_db, double target_gain);

}  // namespace lprx
