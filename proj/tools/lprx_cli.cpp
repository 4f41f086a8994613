#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lprx/codes.hpp"
#include "lprx/kernels.hpp"
#include "lprx/polytope.hpp"
#include "lprx/receivers.hpp"
#include "lprx/sim.hpp"

namespace {

std::vector<double> load_llr_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open LLR file: " + path);
    std::vector<double> llr;
    double value = 0.0;
    while (in >> value) llr.push_back(value);
    if (llr.empty()) throw std::runtime_error("LLR file is empty: " + path);
    return llr;
}

int run_sweep(const std::string& config_path, const std::string& out_path, bool seed_set,
              std::uint64_t seed, int threads) {
    lprx::SimConfig config = lprx::load_config_file(config_path);
    if (seed_set) config.master_seed = seed;
    if (threads > 0) config.threads = threads;
    const auto records = lprx::run_ber_sweep(config);
    lprx::write_csv_file(records, out_path);
    std::cout << lprx::emit_csv(records);
    return 0;
}

int run_decode(const std::string& alist_path, const std::string& llr_path,
               const std::string& formulation_name) {
    const lprx::ParityCheckMatrix code = lprx::load_alist_file(alist_path);
    const std::vector<double> llr = load_llr_file(llr_path);
    if (static_cast<int>(llr.size()) != code.num_bits()) {
        throw std::runtime_error("LLR count " + std::to_string(llr.size()) +
                                 " does not match code length " + std::to_string(code.num_bits()));
    }
    const auto formulation = lprx::parse_formulation(formulation_name);
    const lprx::DecodeResult result = lprx::lp_decode(code, llr, formulation);

    std::ostringstream bits;
    for (auto b : result.hard) bits << static_cast<int>(b);
    std::cout << "status: " << lprx::solve_status_name(result.report.status) << "\n"
              << "objective: " << result.objective << "\n"
              << "integral: " << (result.integral ? "yes" : "no") << "\n"
              << "hard_bits: " << bits.str() << "\n";
    return 0;
}

int run_gen_code(const std::string& family, int rm_order, int rm_log_len, int n, int k,
                 std::uint64_t seed, const std::string& out_path) {
    lprx::CodeSpec spec;
    spec.family = family;
    spec.rm_order = rm_order;
    spec.rm_log_len = rm_log_len;
    spec.n = n;
    spec.k = k;
    spec.seed = seed;
    const lprx::ParityCheckMatrix code = lprx::build_code(spec);
    lprx::save_alist_file(code, out_path);
    std::cout << "wrote " << out_path << " (" << code.num_bits() << " bits, " << code.num_checks()
              << " checks)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LP-relaxed FEC decoding and code-anchored QP receiver simulator"};
    app.require_subcommand(1);

    auto* sweep = app.add_subcommand("sweep", "run a Monte Carlo BER sweep from a config file");
    std::string config_path, out_path;
    std::uint64_t seed_override = 0;
    int threads = 0;
    sweep->add_option("--config", config_path, "JSON configuration path")->required();
    sweep->add_option("--out", out_path, "output CSV path")->required();
    auto* seed_opt = sweep->add_option("--seed", seed_override, "master seed override");
    sweep->add_option("--threads", threads, "worker thread count (0 = hardware)");

    auto* decode = app.add_subcommand("decode", "LP-decode one LLR vector");
    std::string alist_path, llr_path, formulation = "exact";
    decode->add_option("--code", alist_path, "alist file of the parity-check matrix")->required();
    decode->add_option("--llr", llr_path, "whitespace-separated LLR file")->required();
    decode->add_option("--formulation", formulation, "exact | fs | decomposed");

    auto* gen = app.add_subcommand("gen-code", "write an alist for a built-in code family");
    std::string family;
    int rm_order = 1, code_n = 0, code_k = 0;
    std::uint64_t code_seed = 1;
    std::string gen_out;
    gen->add_option("--family", family, "hamming | rm | ldpc-regular")->required();
    gen->add_option("--r", rm_order, "RM order");
    gen->add_option("--n", code_n, "code length (ldpc-regular) or RM log-length with --family rm");
    gen->add_option("--k", code_k, "code dimension (ldpc-regular)");
    gen->add_option("--seed", code_seed, "construction seed (ldpc-regular)");
    gen->add_option("--out", gen_out, "output alist path")->required();

    auto* info = app.add_subcommand("info", "print build and dispatch information");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return 2;
    }

    try {
        if (sweep->parsed()) {
            return run_sweep(config_path, out_path, seed_opt->count() > 0, seed_override, threads);
        }
        if (decode->parsed()) return run_decode(alist_path, llr_path, formulation);
        if (gen->parsed()) {
            // for `rm`, --n is the log-length
            return run_gen_code(family, rm_order, code_n, code_n, code_k, code_seed, gen_out);
        }
        if (info->parsed()) {
            std::cout << "lprx 1.0.0\n"
                      << "kernel backend: " << lprx::kernels::active_backend() << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
