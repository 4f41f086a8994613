#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "lprx/mimo.hpp"
#include "lprx/receivers.hpp"
#include "lprx/rng.hpp"

using namespace lprx;

namespace {

ParityCheckMatrix hamming74() {
    return ParityCheckMatrix(3, 7,
                             {{0, 0}, {0, 2}, {0, 4}, {0, 6},
                              {1, 1}, {1, 2}, {1, 5}, {1, 6},
                              {2, 3}, {2, 4}, {2, 5}, {2, 6}});
}

Eigen::MatrixXd random_spd(int dim, Rng& rng, double ridge = 0.5) {
    Eigen::MatrixXd root(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) root(i, j) = rng.gaussian();
    }
    return root * root.transpose() / dim + ridge * Eigen::MatrixXd::Identity(dim, dim);
}

Eigen::MatrixXd random_channel(int dim, Rng& rng) {
    Eigen::MatrixXd h(dim, 2);
    for (int i = 0; i < dim; ++i) {
        h(i, 0) = rng.gaussian();
        h(i, 1) = rng.gaussian();
    }
    return h;
}

}  // namespace

TEST_CASE("dlmv_weights: orthonormal columns under identity covariance") {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(6, 2);
    h(0, 0) = 1.0;
    h(3, 1) = 1.0;
    const ReceiverWeights w = dlmv_weights(Eigen::MatrixXd::Identity(6, 6), h);
    CHECK((w.matrix - h).norm() < 1e-12);
}

TEST_CASE("dlmv_weights: distortionless response, KKT optimality, scale invariance") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 8;
        const Eigen::MatrixXd cov = random_spd(dim, rng);
        const Eigen::MatrixXd h = random_channel(dim, rng);
        const ReceiverWeights w = dlmv_weights(cov, h);

        CHECK((w.matrix.transpose() * h - Eigen::Matrix2d::Identity()).norm() <= 1e-8);

        // KKT: R W = H lambda for some 2x2 multiplier, i.e. the residual of
        // projecting R W onto the column space of H vanishes
        const Eigen::MatrixXd rw = cov * w.matrix;
        const Eigen::MatrixXd multiplier =
            (h.transpose() * h).ldlt().solve(h.transpose() * rw);
        CHECK((rw - h * multiplier).norm() <= 1e-6);

        for (double c : {0.1, 10.0}) {
            const ReceiverWeights scaled = dlmv_weights(c * cov, h);
            CHECK((scaled.matrix - w.matrix).norm() <= 1e-9);
        }
    }
}

TEST_CASE("dlmv_weights rejects rank-deficient estimates") {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(6, 2);
    h.col(1) = h.col(0);
    CHECK_THROWS_AS(dlmv_weights(Eigen::MatrixXd::Identity(6, 6), h), std::invalid_argument);
}

TEST_CASE("qp_weights: gradient vanishes and large alpha approaches DLMV") {
    Rng rng(21);
    const int dim = 8;
    const Eigen::MatrixXd cov = random_spd(dim, rng);
    const Eigen::MatrixXd h = random_channel(dim, rng);

    const ReceiverWeights w = qp_weights(cov, h, 75.0);
    // gradient of w^T(I2 (x) R)w + alpha ||(I2 (x) H^T)w - e||^2 per column:
    // 2 R w_c + 2 alpha H (H^T w_c - e_c)
    for (int c = 0; c < 2; ++c) {
        const Eigen::VectorXd grad =
            2.0 * cov * w.matrix.col(c) +
            2.0 * 75.0 * h *
                (h.transpose() * w.matrix.col(c) - Eigen::Vector2d::Unit(c));
        CHECK(grad.norm() <= 1e-8);
    }

    const ReceiverWeights stiff = qp_weights(cov, h, 1e8);
    CHECK((stiff.matrix.transpose() * h - Eigen::Matrix2d::Identity()).norm() <= 1e-3);

    const ReceiverWeights dlmv = dlmv_weights(cov, h);
    CHECK((stiff.matrix - dlmv.matrix).norm() <= 1e-3 * dlmv.matrix.norm());
}

TEST_CASE("qp_weights agrees with the generic QP solver") {
    Rng rng(33);
    const int dim = 6;
    const Eigen::MatrixXd cov = random_spd(dim, rng);
    const Eigen::MatrixXd h = random_channel(dim, rng);
    const double alpha = 12.0;
    const ReceiverWeights closed = qp_weights(cov, h, alpha);

    LinearConstraintSystem sys;
    for (int i = 0; i < 2 * dim; ++i) {
        sys.add_variable("w" + std::to_string(i), VarRole::weight);
    }
    QuadraticProgram qp;
    qp.sys = &sys;
    for (int i = 0; i < 2 * dim; ++i) qp.quad_support.push_back(i);
    Eigen::MatrixXd block = cov + alpha * h * h.transpose();
    qp.quad_block = Eigen::MatrixXd::Zero(2 * dim, 2 * dim);
    qp.quad_block.topLeftCorner(dim, dim) = block;
    qp.quad_block.bottomRightCorner(dim, dim) = block;
    qp.linear.assign(2 * dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        qp.linear[i] = -2.0 * alpha * h(i, 0);
        qp.linear[dim + i] = -2.0 * alpha * h(i, 1);
    }
    const auto report = solve_qp(qp);
    REQUIRE(report.status == SolveStatus::optimal);
    for (int i = 0; i < dim; ++i) {
        CHECK(report.solution[i] == doctest::Approx(closed.matrix(i, 0)).epsilon(1e-6));
        CHECK(report.solution[dim + i] == doctest::Approx(closed.matrix(i, 1)).epsilon(1e-6));
    }
}

TEST_CASE("ml_decode_bruteforce: ties and planted optima") {
    const auto code = hamming74();
    CHECK(ml_decode_bruteforce(code, std::vector<double>(7, 0.0)) == BitVector(7, 0));

    SystematicEncoder encoder(code);
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        BitVector message(4);
        for (auto& b : message) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
        const BitVector planted = encoder.encode(message);
        std::vector<double> llr(7);
        for (int j = 0; j < 7; ++j) llr[j] = -2.0 * (2.0 * planted[j] - 1.0);
        CHECK(ml_decode_bruteforce(code, llr) == planted);
    }
}

TEST_CASE("lp_decode: all-positive LLR gives the zero codeword") {
    const auto code = hamming74();
    const DecodeResult result =
        lp_decode(code, std::vector<double>(7, 1.0), CheckFormulation::exact);
    CHECK(result.report.status == SolveStatus::optimal);
    CHECK(result.integral);
    CHECK(result.hard == BitVector(7, 0));
    CHECK(result.objective == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("lp_decode: integral solutions match brute-force ML on BIAWGN draws") {
    const auto code = hamming74();
    SystematicEncoder encoder(code);
    Rng rng(40);
    const double ebn0_db = 4.0;
    const double rate = 4.0 / 7.0;
    const double sigma2 = 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));

    int integral_count = 0;
    for (int trial = 0; trial < 60; ++trial) {
        BitVector message(4);
        for (auto& b : message) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
        const BitVector codeword = encoder.encode(message);
        std::vector<double> llr(7);
        for (int j = 0; j < 7; ++j) {
            const double tx = 1.0 - 2.0 * codeword[j];
            const double rx = tx + std::sqrt(sigma2) * rng.gaussian();
            llr[j] = 2.0 * rx / sigma2;
        }
        const DecodeResult exact = lp_decode(code, llr, CheckFormulation::exact);
        const DecodeResult fs = lp_decode(code, llr, CheckFormulation::fs);
        CHECK(exact.objective == doctest::Approx(fs.objective).epsilon(1e-6));
        if (exact.integral) {
            ++integral_count;
            CHECK(exact.hard == ml_decode_bruteforce(code, llr));
        }
        if (fs.integral) {
            CHECK(fs.hard == ml_decode_bruteforce(code, llr));
        }
    }
    CHECK(integral_count > 30);  // most BIAWGN draws at 4 dB decode integrally
}

TEST_CASE("viterbi_decode: noiseless path recovery, additivity, exhaustive check") {
    const Trellis trellis = build_conv_trellis({"5", "7"}, 8, true);
    Rng rng(60);
    BitVector input(8);
    for (auto& b : input) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
    const auto true_path = trellis.encode_path(input);
    const BitVector output = trellis.path_output(true_path);

    // noiseless branch costs: hamming-like distance to the observed bits
    std::vector<double> costs(trellis.edges.size(), 0.0);
    for (std::size_t e = 0; e < trellis.edges.size(); ++e) {
        const auto& edge = trellis.edges[e];
        for (int s = 0; s < trellis.outputs_per_section; ++s) {
            const int observed = output[edge.section * trellis.outputs_per_section + s];
            costs[e] += edge.output_bits[s] == observed ? 0.0 : 1.0;
        }
    }
    const ViterbiResult noiseless = viterbi_decode(trellis, costs);
    CHECK(noiseless.path == true_path);
    CHECK(noiseless.metric == 0.0);
    CHECK(noiseless.input == input);

    // random costs: exhaustive oracle over all 2^8 inputs
    for (auto& c : costs) c = rng.gaussian();
    const ViterbiResult best = viterbi_decode(trellis, costs);
    double metric_check = 0.0;
    for (int e : best.path) metric_check += costs[e];
    CHECK(best.metric == doctest::Approx(metric_check).epsilon(1e-12));

    double exhaustive = kInf;
    for (int word = 0; word < 256; ++word) {
        BitVector candidate(8);
        for (int i = 0; i < 8; ++i) candidate[i] = (word >> i) & 1;
        const auto path = trellis.encode_path(candidate);
        double metric = 0.0;
        for (int e : path) metric += costs[e];
        exhaustive = std::min(exhaustive, metric);
    }
    CHECK(best.metric == doctest::Approx(exhaustive).epsilon(1e-12));
}

TEST_CASE("lp_decode_trellis: integral flows match Viterbi") {
    const Trellis trellis = build_conv_trellis({"5", "7"}, 12, true);
    Rng rng(71);

    // noiseless frame decodes to the transmitted path
    BitVector input(12);
    for (auto& b : input) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
    const auto true_path = trellis.encode_path(input);
    const BitVector output = trellis.path_output(true_path);
    std::vector<double> costs(trellis.edges.size(), 0.0);
    for (std::size_t e = 0; e < trellis.edges.size(); ++e) {
        const auto& edge = trellis.edges[e];
        for (int s = 0; s < trellis.outputs_per_section; ++s) {
            const int observed = output[edge.section * trellis.outputs_per_section + s];
            costs[e] += edge.output_bits[s] == observed ? 0.0 : 1.0;
        }
    }
    const TrellisDecodeResult clean = lp_decode_trellis(trellis, costs);
    CHECK(clean.report.status == SolveStatus::optimal);
    CHECK(clean.integral);
    CHECK(clean.path == true_path);
    CHECK(clean.hard_input == input);

    // noisy Gaussian costs
    for (int trial = 0; trial < 10; ++trial) {
        for (auto& c : costs) c = rng.gaussian();
        const TrellisDecodeResult lp = lp_decode_trellis(trellis, costs);
        const ViterbiResult vit = viterbi_decode(trellis, costs);
        REQUIRE(lp.report.status == SolveStatus::optimal);
        if (lp.integral) {
            CHECK(lp.objective == doctest::Approx(vit.metric).epsilon(1e-6));
            CHECK(lp.path == vit.path);
        }
    }

    // equal costs: every unit flow has objective = path length * cost
    std::fill(costs.begin(), costs.end(), 0.25);
    const TrellisDecodeResult flat = lp_decode_trellis(trellis, costs);
    CHECK(flat.objective == doctest::Approx(0.25 * trellis.num_sections).epsilon(1e-6));
}

TEST_CASE("joint_qp_decode: noiseless single user recovers the codeword") {
    const auto code = hamming74();
    SystematicEncoder encoder(code);
    Rng rng(90);

    // one user, exact CSI, no noise; 7 bits is odd so use RM(1,3) instead
    const RmCode rm = build_rm_code(1, 3);
    SystematicEncoder rm_encoder(rm.check);
    REQUIRE(rm.check.num_bits() % 2 == 0);

    const int num_rx = 4;
    const ComplexChannel channel = draw_channels(num_rx, {1.0}, rng);
    const RealChannelModel model = complex_to_real(channel);
    const Permutation perm = build_permutation(568, rm.check.num_bits());

    BitVector message(rm_encoder.dimension());
    for (auto& b : message) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
    const BitVector codeword = rm_encoder.encode(message);
    const Eigen::MatrixXd symbols = map_bits_to_symbols(perm.apply(codeword));
    const Eigen::MatrixXd received = transmit_frame(model, {symbols}, 0.0, rng);

    const CovarianceEstimate cov = estimate_covariance(received, 0.1);
    const JointQpResult joint =
        joint_qp_decode(cov.loaded, model.user_block(0), 75.0, received, rm.check, perm,
                        CheckFormulation::exact);
    REQUIRE(joint.decode.report.status == SolveStatus::optimal);
    CHECK(joint.decode.hard == codeword);
}

TEST_CASE("round_bits applies the tie rule") {
    const BitVector bits = round_bits({0.2, 0.8, 0.5, 0.5 + 1e-12, 0.5000001});
    CHECK(bits == BitVector{0, 1, 0, 0, 1});
}
