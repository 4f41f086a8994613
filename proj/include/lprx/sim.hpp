#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lprx/codes.hpp"
#include "lprx/optim.hpp"

namespace lprx {

// Code selection: either an alist file or a built-in family
// ("hamming" fixed (7,4); "rm" with order r and log-length m;
// "ldpc-regular" with (n, k, seed)).
struct CodeSpec {
    std::string family;
    std::string alist_path;
    int n = 0;
    int k = 0;
    int rm_order = 0;
    int rm_log_len = 0;
    std::uint64_t seed = 1;
};

ParityCheckMatrix build_code(const CodeSpec& spec);

struct SolverConfig {
    double eps = 1e-6;
    int max_iterations = 20000;
};

struct SimConfig {
    std::uint64_t master_seed = 1;
    int num_rx = 32;
    std::vector<double> user_gains;            // user 1 is the target
    std::vector<int> contaminators;            // 1-based interferer indices (subset of 2..Nu)
    CodeSpec code;
    std::vector<std::uint64_t> permutation_seeds;  // one per user
    std::vector<std::string> receivers;            // dlmv | qp | joint-qp
    std::vector<double> snr_db;
    int frames_per_point = 200;
    double diag_loading_mult = 200.0;  // gamma = mult * sigma_n^2
    double alpha = 75.0;
    int pilot_len = 8;                 // estimation noise variance = sigma_n^2 / pilot_len
    int covariance_snapshots = 0;      // T_R; 0 means the whole frame
    std::string formulation = "exact";
    int degree_cap = 10;
    SolverConfig solver;
    int threads = 0;  // 0 = hardware concurrency

    SolverOptions solver_options() const;
};

// Strict JSON config: unknown keys are rejected, validation failures are
// reported with their field names.
SimConfig parse_config(const std::string& json_text);
SimConfig load_config_file(const std::string& path);

struct BerRecord {
    std::string receiver;
    double snr_db = 0.0;
    long long bits = 0;
    long long bit_errors = 0;
    int frames = 0;
    int frame_errors = 0;
    double ber = 0.0;
};

// Seeded Monte Carlo sweep. Each (snr, frame) trial derives its own RNG
// streams from the master seed, so results do not depend on scheduling;
// frames of one SNR point may run on several worker threads.
std::vector<BerRecord> run_ber_sweep(const SimConfig& config);

// Fixed schema: receiver,snr_db,bits,bit_errors,frames,frame_errors,ber
// with rows sorted by (receiver, snr) and BER printed to 6 significant
// digits.
std::string emit_csv(const std::vector<BerRecord>& records);
void write_csv_file(const std::vector<BerRecord>& records, const std::string& path);

}  // namespace lprx
