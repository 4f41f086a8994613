#include "lprx/mimo.hpp"

#include <cmath>
#include <stdexcept>

namespace lprx {

ComplexChannel draw_channels(int num_rx, const std::vector<double>& power_gains, Rng& rng) {
    if (num_rx < 1) throw std::invalid_argument("draw_channels: need at least one antenna");
    if (power_gains.empty()) throw std::invalid_argument("draw_channels: no users");
    for (double g : power_gains) {
        if (!(g > 0.0)) throw std::invalid_argument("draw_channels: power gains must be positive");
    }
    ComplexChannel channel;
    channel.power_gains = power_gains;
    channel.gains.resize(num_rx, static_cast<int>(power_gains.size()));
    for (int k = 0; k < channel.num_users(); ++k) {
        const double sigma = std::sqrt(power_gains[k] / 2.0);  // per real component
        for (int r = 0; r < num_rx; ++r) {
            channel.gains(r, k) =
                std::complex<double>(sigma * rng.gaussian(), sigma * rng.gaussian());
        }
    }
    return channel;
}

Eigen::MatrixXd real_user_block(const Eigen::VectorXcd& gains) {
    const int num_rx = static_cast<int>(gains.size());
    Eigen::MatrixXd block(2 * num_rx, 2);
    for (int r = 0; r < num_rx; ++r) {
        const double re = gains[r].real();
        const double im = gains[r].imag();
        block(r, 0) = re;
        block(r, 1) = -im;
        block(num_rx + r, 0) = im;
        block(num_rx + r, 1) = re;
    }
    return block;
}

RealChannelModel complex_to_real(const ComplexChannel& channel) {
    RealChannelModel model;
    model.num_rx = channel.num_rx();
    model.num_users = channel.num_users();
    model.channel.resize(2 * model.num_rx, 2 * model.num_users);
    for (int k = 0; k < model.num_users; ++k) {
        model.channel.block(0, 2 * k, 2 * model.num_rx, 2) = real_user_block(channel.gains.col(k));
    }
    return model;
}

ChannelEstimate contaminated_estimate(const Eigen::MatrixXd& target,
                                      const std::vector<Eigen::MatrixXd>& interferers,
                                      double noise_variance, Rng& rng) {
    if (noise_variance < 0.0) {
        throw std::invalid_argument("contaminated_estimate: negative noise variance");
    }
    ChannelEstimate estimate;
    estimate.noise_variance = noise_variance;
    estimate.estimate = target;
    for (const auto& h : interferers) {
        if (h.rows() != target.rows() || h.cols() != target.cols()) {
            throw std::invalid_argument("contaminated_estimate: interferer dimension mismatch");
        }
        estimate.estimate += h;
    }
    if (noise_variance > 0.0) {
        const int num_rx = static_cast<int>(target.rows()) / 2;
        Eigen::VectorXcd noise(num_rx);
        const double sigma = std::sqrt(noise_variance);
        for (int r = 0; r < num_rx; ++r) {
            noise[r] = std::complex<double>(sigma * rng.gaussian(), sigma * rng.gaussian());
        }
        estimate.estimate += real_user_block(noise);
    }
    return estimate;
}

Eigen::MatrixXd map_bits_to_symbols(const BitVector& bits) {
    if (bits.size() % 2 != 0) {
        throw std::invalid_argument("map_bits_to_symbols: bit count must be even");
    }
    const int num_symbols = static_cast<int>(bits.size() / 2);
    const double amp = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXd symbols(2, num_symbols);
    for (int t = 0; t < num_symbols; ++t) {
        symbols(0, t) = (2.0 * bits[2 * t] - 1.0) * amp;
        symbols(1, t) = (1.0 - 2.0 * bits[2 * t + 1]) * amp;
    }
    return symbols;
}

BitVector slice_symbols_to_bits(const Eigen::MatrixXd& symbols) {
    if (symbols.rows() != 2) throw std::invalid_argument("slice: expected 2 x T symbols");
    BitVector bits(2 * symbols.cols());
    for (int t = 0; t < symbols.cols(); ++t) {
        bits[2 * t] = symbols(0, t) > 0.0 ? 1 : 0;
        bits[2 * t + 1] = symbols(1, t) < 0.0 ? 1 : 0;
    }
    return bits;
}

Eigen::MatrixXd transmit_frame(const RealChannelModel& model,
                               const std::vector<Eigen::MatrixXd>& user_symbols,
                               double noise_variance, Rng& rng) {
    if (static_cast<int>(user_symbols.size()) != model.num_users) {
        throw std::invalid_argument("transmit_frame: need one symbol stream per user");
    }
    if (noise_variance < 0.0) throw std::invalid_argument("transmit_frame: negative variance");
    const int num_snapshots = user_symbols.empty() ? 0 : static_cast<int>(user_symbols[0].cols());
    for (const auto& s : user_symbols) {
        if (s.rows() != 2 || s.cols() != num_snapshots) {
            throw std::invalid_argument("transmit_frame: symbol streams must all be 2 x T");
        }
    }
    Eigen::MatrixXd received = Eigen::MatrixXd::Zero(2 * model.num_rx, num_snapshots);
    for (int k = 0; k < model.num_users; ++k) {
        received.noalias() += model.user_block(k) * user_symbols[k];
    }
    if (noise_variance > 0.0) {
        const double sigma = std::sqrt(noise_variance);
        for (int t = 0; t < num_snapshots; ++t) {
            for (int r = 0; r < 2 * model.num_rx; ++r) received(r, t) += sigma * rng.gaussian();
        }
    }
    return received;
}

CovarianceEstimate estimate_covariance(const Eigen::MatrixXd& snapshots, double gamma) {
    if (snapshots.cols() < 1) {
        throw std::invalid_argument("estimate_covariance: need at least one snapshot");
    }
    if (gamma < 0.0) throw std::invalid_argument("estimate_covariance: negative loading");
    CovarianceEstimate cov;
    cov.gamma = gamma;
    cov.snapshots = static_cast<int>(snapshots.cols());
    cov.sample = (snapshots * snapshots.transpose()) / static_cast<double>(cov.snapshots);
    cov.sample = 0.5 * (cov.sample + cov.sample.transpose().eval());
    cov.loaded = cov.sample;
    cov.loaded.diagonal().array() += gamma;
    return cov;
}

double noise_variance_for_snr_db(double snr_db, double target_gain) {
    // SNR = g1 / (2 sigma^2) with unit average symbol energy
    return target_gain * std::pow(10.0, -snr_db / 10.0) / 2.0;
}

}  // namespace lprx
