#include "lprx/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lprx/mimo.hpp"
#include "lprx/receivers.hpp"
#include "lprx/rng.hpp"

namespace lprx {

namespace {

struct FrameOutcome {
    // one slot per configured receiver
    std::vector<int> bit_errors;
    std::vector<int> frame_error;
};

struct SweepContext {
    const SimConfig* config = nullptr;
    ParityCheckMatrix code;
    SystematicEncoder encoder{ParityCheckMatrix(1, 2, {{0, 0}, {0, 1}})};
    std::vector<Permutation> perms;
    CheckFormulation formulation = CheckFormulation::exact;
};

std::vector<double> depermuted_llr(const Eigen::MatrixXd& estimates, const Permutation& perm) {
    const int n = 2 * static_cast<int>(estimates.cols());
    std::vector<double> llr(n, 0.0);
    double peak = 0.0;
    for (int t = 0; t < estimates.cols(); ++t) {
        // bit 1 on the real rail maps to +1/sqrt(2), on the imaginary rail to -1/sqrt(2)
        llr[perm.map[2 * t]] = -estimates(0, t);
        llr[perm.map[2 * t + 1]] = estimates(1, t);
        peak = std::max({peak, std::fabs(estimates(0, t)), std::fabs(estimates(1, t))});
    }
    if (peak > 0.0) {
        for (double& v : llr) v /= peak;
    }
    return llr;
}

int count_info_bit_errors(const BitVector& decoded_codeword, const BitVector& message,
                          const SystematicEncoder& encoder) {
    int errors = 0;
    const auto& positions = encoder.message_positions();
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (decoded_codeword[positions[i]] != message[i]) ++errors;
    }
    return errors;
}

FrameOutcome run_frame(const SweepContext& ctx, int snr_index, int frame_index) {
    const SimConfig& config = *ctx.config;
    const int num_users = static_cast<int>(config.user_gains.size());
    const int n = ctx.code.num_bits();
    const int k = ctx.encoder.dimension();
    const auto s = static_cast<std::uint64_t>(snr_index);
    const auto f = static_cast<std::uint64_t>(frame_index);

    const double sigma2 =
        noise_variance_for_snr_db(config.snr_db[snr_index], config.user_gains[0]);
    const double gamma = config.diag_loading_mult * sigma2;

    Rng chan_rng = derive_rng(config.master_seed, "channel", {s, f});
    Rng noise_rng = derive_rng(config.master_seed, "noise", {s, f});
    Rng pilot_rng = derive_rng(config.master_seed, "pilot-noise", {s, f});

    const ComplexChannel channel = draw_channels(config.num_rx, config.user_gains, chan_rng);
    const RealChannelModel model = complex_to_real(channel);

    std::vector<BitVector> messages(num_users);
    std::vector<Eigen::MatrixXd> symbols(num_users);
    for (int u = 0; u < num_users; ++u) {
        Rng data_rng = derive_rng(config.master_seed, "data", {s, f, static_cast<std::uint64_t>(u)});
        BitVector message(k);
        for (int i = 0; i < k; ++i) message[i] = static_cast<std::uint8_t>(data_rng.next_u64() & 1);
        messages[u] = message;
        const BitVector codeword = ctx.encoder.encode(message);
        const BitVector permuted = ctx.perms[u].apply(codeword);
        symbols[u] = map_bits_to_symbols(permuted);
    }

    const Eigen::MatrixXd received = transmit_frame(model, symbols, sigma2, noise_rng);

    std::vector<Eigen::MatrixXd> interferer_blocks;
    for (int c : config.contaminators) interferer_blocks.push_back(model.user_block(c - 1));
    const ChannelEstimate estimate = contaminated_estimate(
        model.user_block(0), interferer_blocks, sigma2 / config.pilot_len, pilot_rng);

    const int t_r = config.covariance_snapshots == 0
                        ? static_cast<int>(received.cols())
                        : std::min<int>(config.covariance_snapshots, received.cols());
    const CovarianceEstimate cov = estimate_covariance(received.leftCols(t_r), gamma);

    const SolverOptions solver_options = config.solver_options();

    FrameOutcome outcome;
    for (const auto& tag : config.receivers) {
        BitVector decoded;
        if (tag == "joint-qp") {
            const JointQpResult joint =
                joint_qp_decode(cov.loaded, estimate.estimate, config.alpha, received, ctx.code,
                                ctx.perms[0], ctx.formulation, solver_options, config.degree_cap);
            decoded = joint.decode.hard;
        } else {
            const ReceiverWeights weights =
                tag == "dlmv" ? dlmv_weights(cov.loaded, estimate.estimate)
                              : qp_weights(cov.loaded, estimate.estimate, config.alpha);
            const Eigen::MatrixXd detected = weights.matrix.transpose() * received;  // 2 x T
            const std::vector<double> llr = depermuted_llr(detected, ctx.perms[0]);
            decoded =
                lp_decode(ctx.code, llr, ctx.formulation, solver_options, config.degree_cap).hard;
        }
        const int errors = count_info_bit_errors(decoded, messages[0], ctx.encoder);
        outcome.bit_errors.push_back(errors);
        outcome.frame_error.push_back(errors > 0 ? 1 : 0);
    }
    (void)n;
    return outcome;
}

}  // namespace

std::vector<BerRecord> run_ber_sweep(const SimConfig& config) {
    SweepContext ctx;
    ctx.config = &config;
    ctx.code = build_code(config.code);
    ctx.encoder = SystematicEncoder(ctx.code);
    ctx.formulation = parse_formulation(config.formulation);
    if (ctx.code.num_bits() % 2 != 0) {
        throw std::runtime_error("run_ber_sweep: code length must be even for 4-QAM framing");
    }
    for (std::uint64_t seed : config.permutation_seeds) {
        ctx.perms.push_back(build_permutation(seed, ctx.code.num_bits()));
    }

    const int num_receivers = static_cast<int>(config.receivers.size());
    const int frames = config.frames_per_point;
    const int k = ctx.encoder.dimension();

    int num_threads = config.threads > 0 ? config.threads
                                         : static_cast<int>(std::thread::hardware_concurrency());
    num_threads = std::max(1, std::min(num_threads, frames));

    std::vector<BerRecord> records;
    for (int snr_index = 0; snr_index < static_cast<int>(config.snr_db.size()); ++snr_index) {
        std::vector<FrameOutcome> outcomes(frames);
        std::atomic<int> next{0};
        auto worker = [&]() {
            for (;;) {
                const int frame = next.fetch_add(1);
                if (frame >= frames) return;
                outcomes[frame] = run_frame(ctx, snr_index, frame);
            }
        };
        if (num_threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < num_threads; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }

        // order-independent integer reduction, done in frame order
        for (int r = 0; r < num_receivers; ++r) {
            BerRecord record;
            record.receiver = config.receivers[r];
            record.snr_db = config.snr_db[snr_index];
            record.frames = frames;
            record.bits = static_cast<long long>(frames) * k;
            for (int frame = 0; frame < frames; ++frame) {
                record.bit_errors += outcomes[frame].bit_errors[r];
                record.frame_errors += outcomes[frame].frame_error[r];
            }
            record.ber = static_cast<double>(record.bit_errors) / static_cast<double>(record.bits);
            records.push_back(std::move(record));
        }
    }
    return records;
}

std::string emit_csv(const std::vector<BerRecord>& records) {
    if (records.empty()) throw std::invalid_argument("emit_csv: no records");
    std::vector<BerRecord> sorted = records;
    std::stable_sort(sorted.begin(), sorted.end(), [](const BerRecord& a, const BerRecord& b) {
        if (a.receiver != b.receiver) return a.receiver < b.receiver;
        return a.snr_db < b.snr_db;
    });
    std::ostringstream out;
    out << "receiver,snr_db,bits,bit_errors,frames,frame_errors,ber\n";
    char buffer[64];
    for (const auto& r : sorted) {
        std::snprintf(buffer, sizeof(buffer), "%.6g", r.snr_db);
        out << r.receiver << "," << buffer << "," << r.bits << "," << r.bit_errors << ","
            << r.frames << "," << r.frame_errors << ",";
        std::snprintf(buffer, sizeof(buffer), "%.6g", r.ber);
        out << buffer << "\n";
    }
    return out.str();
}

void write_csv_file(const std::vector<BerRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write CSV file: " + path);
    out << emit_csv(records);
    if (!out) throw std::runtime_error("I/O failure while writing " + path);
}

}  // namespace lprx
