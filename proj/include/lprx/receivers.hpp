#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lprx/codes.hpp"
#include "lprx/optim.hpp"
#include "lprx/polytope.hpp"
#include "lprx/trellis.hpp"

namespace lprx {

// Linear receiver front end W (2Nr x 2); column 0 produces the real part of
// the symbol estimate, column 1 the imaginary part. w = [w_R; w_I] is the
// stacked column view.
struct ReceiverWeights {
    Eigen::MatrixXd matrix;
    std::string provenance;  // dlmv | qp | joint-qp
    double gamma = 0.0;
    double alpha = 0.0;

    Eigen::VectorXd vectorized() const;
};

struct DecodeResult {
    BitVector hard;
    std::vector<double> soft;   // relaxed bit values in [0,1]
    bool integral = false;      // max_j |soft_j - round(soft_j)| <= 1e-5
    double objective = 0.0;
    SolveReport report;
};

// Minimum-variance receiver with distortionless response on the estimated
// channel: W = R'^-1 H^ (H^T R'^-1 H^)^-1, so W^T H^ = I2.
ReceiverWeights dlmv_weights(const Eigen::MatrixXd& loaded_cov,
                             const Eigen::MatrixXd& channel_est);

// Unconstrained regularized form: minimizes
// w^T (I2 (x) R') w + alpha ||(I2 (x) H^T) w - e||^2, solved in closed form.
ReceiverWeights qp_weights(const Eigen::MatrixXd& loaded_cov, const Eigen::MatrixXd& channel_est,
                           double alpha);

struct JointQpResult {
    ReceiverWeights weights;
    DecodeResult decode;
};

// Code-anchored joint receiver: the regularized beamforming objective plus
// per-snapshot 4-QAM mapping equalities on the permuted bits and the code
// constraints of the selected formulation on the unpermuted bits. The
// permutation is applied by index re-addressing inside the mapping rows.
JointQpResult joint_qp_decode(const Eigen::MatrixXd& loaded_cov,
                              const Eigen::MatrixXd& channel_est, double alpha,
                              const Eigen::MatrixXd& snapshots, const ParityCheckMatrix& code,
                              const Permutation& perm, CheckFormulation formulation,
                              const SolverOptions& options = {}, int degree_cap = 10);

// LP decoding: minimize llr . f over the selected relaxation.
DecodeResult lp_decode(const ParityCheckMatrix& code, const std::vector<double>& llr,
                       CheckFormulation formulation, const SolverOptions& options = {},
                       int degree_cap = 10);

struct TrellisDecodeResult {
    std::vector<double> flow;  // per edge
    std::vector<double> soft_input;
    BitVector hard_input;
    bool integral = false;
    double objective = 0.0;
    std::vector<int> path;  // edges carrying flow > 0.5, in section order
    SolveReport report;
};

// Min-cost unit flow over the trellis with the given per-edge costs.
TrellisDecodeResult lp_decode_trellis(const Trellis& trellis,
                                      const std::vector<double>& edge_costs,
                                      const SolverOptions& options = {});

// Exact ML oracle by codeword enumeration; dimension capped at 16. Ties go
// to the lexicographically smallest codeword.
BitVector ml_decode_bruteforce(const ParityCheckMatrix& code, const std::vector<double>& llr);

struct ViterbiResult {
    std::vector<int> path;
    double metric = 0.0;
    BitVector input;
    BitVector output;
};

// Exact min-metric start-to-end path; ties resolved toward the smaller edge
// index.
ViterbiResult viterbi_decode(const Trellis& trellis, const std::vector<double>& edge_costs);

// Hard decision with the fixed rounding rule: 1 iff f >= 0.5 and f is not
// within 1e-9 of the 0.5 tie.
BitVector round_bits(const std::vector<double>& soft);
bool is_integral(const std::vector<double>& values, double tol = 1e-5);

}  // namespace lprx
