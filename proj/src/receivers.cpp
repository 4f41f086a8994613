#include "lprx/receivers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lprx {

Eigen::VectorXd ReceiverWeights::vectorized() const {
    Eigen::VectorXd w(2 * matrix.rows());
    w.head(matrix.rows()) = matrix.col(0);
    w.tail(matrix.rows()) = matrix.col(1);
    return w;
}

BitVector round_bits(const std::vector<double>& soft) {
    BitVector hard(soft.size());
    for (std::size_t i = 0; i < soft.size(); ++i) {
        const bool tie = std::fabs(soft[i] - 0.5) <= 1e-9;
        hard[i] = (!tie && soft[i] >= 0.5) ? 1 : 0;
    }
    return hard;
}

bool is_integral(const std::vector<double>& values, double tol) {
    for (double v : values) {
        if (std::fabs(v - std::round(v)) > tol) return false;
    }
    return true;
}

namespace {

void check_receiver_inputs(const Eigen::MatrixXd& loaded_cov, const Eigen::MatrixXd& channel_est) {
    if (loaded_cov.rows() != loaded_cov.cols()) {
        throw std::invalid_argument("receiver: covariance must be square");
    }
    if (channel_est.rows() != loaded_cov.rows() || channel_est.cols() != 2) {
        throw std::invalid_argument("receiver: channel estimate must be 2Nr x 2");
    }
}

}  // namespace

ReceiverWeights dlmv_weights(const Eigen::MatrixXd& loaded_cov,
                             const Eigen::MatrixXd& channel_est) {
    check_receiver_inputs(loaded_cov, channel_est);
    Eigen::LLT<Eigen::MatrixXd> llt(loaded_cov);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("dlmv_weights: covariance is not positive definite");
    }
    const Eigen::MatrixXd rinv_h = llt.solve(channel_est);
    const Eigen::MatrixXd gram = channel_est.transpose() * rinv_h;  // 2x2
    const double det = gram(0, 0) * gram(1, 1) - gram(0, 1) * gram(1, 0);
    const double scale = gram.cwiseAbs().maxCoeff();
    if (!(std::fabs(det) > 1e-12 * std::max(scale * scale, 1e-300))) {
        throw std::invalid_argument("dlmv_weights: channel estimate is rank deficient");
    }
    Eigen::Matrix2d gram_inv;
    gram_inv << gram(1, 1), -gram(0, 1), -gram(1, 0), gram(0, 0);
    gram_inv /= det;

    ReceiverWeights weights;
    weights.matrix = rinv_h * gram_inv;
    weights.provenance = "dlmv";
    return weights;
}

ReceiverWeights qp_weights(const Eigen::MatrixXd& loaded_cov, const Eigen::MatrixXd& channel_est,
                           double alpha) {
    check_receiver_inputs(loaded_cov, channel_est);
    if (!(alpha > 0.0)) throw std::invalid_argument("qp_weights: alpha must be positive");
    Eigen::MatrixXd system = loaded_cov + alpha * channel_est * channel_est.transpose();
    Eigen::LLT<Eigen::MatrixXd> llt(system);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("qp_weights: assembled matrix is singular");
    }
    ReceiverWeights weights;
    weights.matrix = alpha * llt.solve(channel_est);
    weights.provenance = "qp";
    weights.alpha = alpha;
    return weights;
}

DecodeResult lp_decode(const ParityCheckMatrix& code, const std::vector<double>& llr,
                       CheckFormulation formulation, const SolverOptions& options,
                       int degree_cap) {
    if (static_cast<int>(llr.size()) != code.num_bits()) {
        throw std::invalid_argument("lp_decode: llr length mismatch");
    }
    LinearConstraintSystem sys;
    const std::vector<int> bits = add_bit_variables(sys, "c", code.num_bits());
    add_code_constraints(sys, code, bits, formulation, degree_cap);

    std::vector<double> cost(sys.num_variables(), 0.0);
    for (int j = 0; j < code.num_bits(); ++j) cost[bits[j]] = llr[j];

    DecodeResult result;
    result.report = solve_lp(cost, sys, options);
    result.soft.resize(code.num_bits());
    for (int j = 0; j < code.num_bits(); ++j) {
        result.soft[j] = std::clamp(result.report.solution[bits[j]], 0.0, 1.0);
    }
    result.hard = round_bits(result.soft);
    result.integral = is_integral(result.soft);
    double obj = 0.0;
    for (int j = 0; j < code.num_bits(); ++j) obj += llr[j] * result.report.solution[bits[j]];
    result.objective = obj;
    return result;
}

JointQpResult joint_qp_decode(const Eigen::MatrixXd& loaded_cov,
                              const Eigen::MatrixXd& channel_est, double alpha,
                              const Eigen::MatrixXd& snapshots, const ParityCheckMatrix& code,
                              const Permutation& perm, CheckFormulation formulation,
                              const SolverOptions& options, int degree_cap) {
    check_receiver_inputs(loaded_cov, channel_est);
    if (!(alpha > 0.0)) throw std::invalid_argument("joint_qp_decode: alpha must be positive");
    const int n = code.num_bits();
    const int num_snapshots = static_cast<int>(snapshots.cols());
    if (snapshots.rows() != loaded_cov.rows()) {
        throw std::invalid_argument("joint_qp_decode: snapshot dimension mismatch");
    }
    if (2 * num_snapshots != n) {
        throw std::invalid_argument("joint_qp_decode: need exactly n/2 snapshots for n code bits");
    }
    if (perm.size() != n) throw std::invalid_argument("joint_qp_decode: permutation length mismatch");

    const int dim = static_cast<int>(loaded_cov.rows());  // 2Nr
    LinearConstraintSystem sys;
    std::vector<int> w_vars;
    w_vars.reserve(2 * dim);
    for (int i = 0; i < dim; ++i) {
        w_vars.push_back(sys.add_variable("w/R/" + std::to_string(i), VarRole::weight));
    }
    for (int i = 0; i < dim; ++i) {
        w_vars.push_back(sys.add_variable("w/I/" + std::to_string(i), VarRole::weight));
    }
    const std::vector<int> bits = add_bit_variables(sys, "c", n);
    add_code_constraints(sys, code, bits, formulation, degree_cap);

    // per-snapshot 4-QAM mapping on the permuted bits (index re-addressing,
    // the permuted vector is never materialized):
    //   w_R . y_t - sqrt(2) f_{perm(2t)}   = -1/sqrt(2)
    //   w_I . y_t + sqrt(2) f_{perm(2t+1)} = +1/sqrt(2)
    const double root2 = std::sqrt(2.0);
    for (int t = 0; t < num_snapshots; ++t) {
        std::vector<LinearTerm> row_re, row_im;
        row_re.reserve(dim + 1);
        row_im.reserve(dim + 1);
        for (int i = 0; i < dim; ++i) {
            const double y = snapshots(i, t);
            if (y != 0.0) {
                row_re.push_back({w_vars[i], y});
                row_im.push_back({w_vars[dim + i], y});
            }
        }
        row_re.push_back({bits[perm.map[2 * t]], -root2});
        row_im.push_back({bits[perm.map[2 * t + 1]], root2});
        sys.add_equality(std::move(row_re), -1.0 / root2);
        sys.add_equality(std::move(row_im), 1.0 / root2);
    }

    QuadraticProgram qp;
    qp.sys = &sys;
    qp.quad_support = w_vars;
    Eigen::MatrixXd block = loaded_cov + alpha * channel_est * channel_est.transpose();
    qp.quad_block = Eigen::MatrixXd::Zero(2 * dim, 2 * dim);
    qp.quad_block.topLeftCorner(dim, dim) = block;
    qp.quad_block.bottomRightCorner(dim, dim) = block;
    qp.linear.assign(sys.num_variables(), 0.0);
    for (int i = 0; i < dim; ++i) {
        qp.linear[w_vars[i]] = -2.0 * alpha * channel_est(i, 0);
        qp.linear[w_vars[dim + i]] = -2.0 * alpha * channel_est(i, 1);
    }
    qp.constant = 2.0 * alpha;

    JointQpResult result;
    result.decode.report = solve_qp(qp, options);
    const auto& x = result.decode.report.solution;

    result.weights.matrix.resize(dim, 2);
    for (int i = 0; i < dim; ++i) {
        result.weights.matrix(i, 0) = x[w_vars[i]];
        result.weights.matrix(i, 1) = x[w_vars[dim + i]];
    }
    result.weights.provenance = "joint-qp";
    result.weights.alpha = alpha;

    result.decode.soft.resize(n);
    for (int j = 0; j < n; ++j) result.decode.soft[j] = std::clamp(x[bits[j]], 0.0, 1.0);
    result.decode.hard = round_bits(result.decode.soft);
    result.decode.integral = is_integral(result.decode.soft);
    result.decode.objective = result.decode.report.objective;
    return result;
}

TrellisDecodeResult lp_decode_trellis(const Trellis& trellis,
                                      const std::vector<double>& edge_costs,
                                      const SolverOptions& options) {
    if (edge_costs.size() != trellis.edges.size()) {
        throw std::invalid_argument("lp_decode_trellis: cost per edge required");
    }
    for (double c : edge_costs) {
        if (!std::isfinite(c)) throw std::invalid_argument("lp_decode_trellis: non-finite cost");
    }
    LinearConstraintSystem sys;
    const FlowVars flow = flow_constraints(sys, trellis, "a");
    std::vector<double> cost(sys.num_variables(), 0.0);
    for (std::size_t e = 0; e < edge_costs.size(); ++e) cost[flow.edge_vars[e]] = edge_costs[e];

    TrellisDecodeResult result;
    result.report = solve_lp(cost, sys, options);
    result.flow.resize(edge_costs.size());
    for (std::size_t e = 0; e < edge_costs.size(); ++e) {
        result.flow[e] = result.report.solution[flow.edge_vars[e]];
    }
    result.integral = is_integral(result.flow);
    result.objective = 0.0;
    for (std::size_t e = 0; e < edge_costs.size(); ++e) {
        result.objective += edge_costs[e] * result.flow[e];
    }

    const auto input_sets = trellis.input_one_edges();
    result.soft_input.resize(trellis.num_input_positions());
    for (int j = 0; j < trellis.num_input_positions(); ++j) {
        double acc = 0.0;
        for (int e : input_sets[j]) acc += result.flow[e];
        result.soft_input[j] = std::clamp(acc, 0.0, 1.0);
    }
    result.hard_input = round_bits(result.soft_input);

    for (std::size_t e = 0; e < result.flow.size(); ++e) {
        if (result.flow[e] > 0.5) result.path.push_back(static_cast<int>(e));
    }
    std::sort(result.path.begin(), result.path.end(), [&](int a, int b) {
        return trellis.edges[a].section < trellis.edges[b].section;
    });
    return result;
}

BitVector ml_decode_bruteforce(const ParityCheckMatrix& code, const std::vector<double>& llr) {
    if (static_cast<int>(llr.size()) != code.num_bits()) {
        throw std::invalid_argument("ml_decode_bruteforce: llr length mismatch");
    }
    SystematicEncoder encoder(code);
    if (encoder.dimension() > 16) {
        throw std::invalid_argument("ml_decode_bruteforce: dimension above 16 is not enumerable");
    }
    const int k = encoder.dimension();
    BitVector best;
    double best_cost = 0.0;
    for (std::uint64_t word = 0; word < (1ULL << k); ++word) {
        BitVector message(k);
        for (int i = 0; i < k; ++i) message[i] = static_cast<std::uint8_t>((word >> i) & 1ULL);
        const BitVector codeword = encoder.encode(message);
        double cost = 0.0;
        for (int j = 0; j < code.num_bits(); ++j) cost += llr[j] * codeword[j];
        if (best.empty() || cost < best_cost - 1e-15 ||
            (std::fabs(cost - best_cost) <= 1e-15 && codeword < best)) {
            best = codeword;
            best_cost = cost;
        }
    }
    return best;
}

ViterbiResult viterbi_decode(const Trellis& trellis, const std::vector<double>& edge_costs) {
    if (edge_costs.size() != trellis.edges.size()) {
        throw std::invalid_argument("viterbi_decode: cost per edge required");
    }
    // forward pass over boundaries; ties keep the earlier edge
    std::vector<std::map<int, std::pair<double, int>>> best(trellis.num_sections + 1);
    best[0][trellis.start_state] = {0.0, -1};
    for (int e = 0; e < static_cast<int>(trellis.edges.size()); ++e) {
        const auto& edge = trellis.edges[e];
        const auto it = best[edge.section].find(edge.from_state);
        if (it == best[edge.section].end()) continue;
        const double metric = it->second.first + edge_costs[e];
        auto& slot = best[edge.section + 1];
        const auto found = slot.find(edge.to_state);
        if (found == slot.end() || metric < found->second.first) {
            slot[edge.to_state] = {metric, e};
        }
    }

    int final_state = trellis.end_state;
    if (final_state < 0) {
        double best_metric = kInf;
        for (const auto& [state, entry] : best[trellis.num_sections]) {
            if (entry.first < best_metric) {
                best_metric = entry.first;
                final_state = state;
            }
        }
    }
    const auto terminal = best[trellis.num_sections].find(final_state);
    if (terminal == best[trellis.num_sections].end()) {
        throw std::logic_error("viterbi_decode: end state unreachable");
    }

    ViterbiResult result;
    result.metric = terminal->second.first;
    int state = final_state;
    for (int boundary = trellis.num_sections; boundary > 0; --boundary) {
        const int e = best[boundary].at(state).second;
        result.path.push_back(e);
        state = trellis.edges[e].from_state;
    }
    std::reverse(result.path.begin(), result.path.end());
    result.input = trellis.path_input(result.path);
    result.output = trellis.path_output(result.path);
    return result;
}

}  // namespace lprx
