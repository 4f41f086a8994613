#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lprx/polytope.hpp"
#include "lprx/sim.hpp"

namespace lprx {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::vector<std::string>& problems) {
    std::ostringstream out;
    out << "invalid configuration:";
    for (const auto& p : problems) out << "\n  - " << p;
    throw std::runtime_error(out.str());
}

void reject_unknown(const json& object, const std::set<std::string>& known,
                    const std::string& scope, std::vector<std::string>& problems) {
    for (const auto& item : object.items()) {
        if (!known.count(item.key())) {
            problems.push_back(scope + ": unknown key '" + item.key() + "'");
        }
    }
}

CodeSpec parse_code_spec(const json& j, std::vector<std::string>& problems) {
    CodeSpec spec;
    if (!j.is_object()) {
        problems.push_back("code: must be an object");
        return spec;
    }
    reject_unknown(j, {"family", "alist", "n", "k", "r", "m", "seed"}, "code", problems);
    if (j.contains("alist")) {
        spec.alist_path = j.at("alist").get<std::string>();
        if (j.contains("family")) problems.push_back("code: give either alist or family, not both");
        return spec;
    }
    if (!j.contains("family")) {
        problems.push_back("code: needs 'family' or 'alist'");
        return spec;
    }
    spec.family = j.at("family").get<std::string>();
    if (spec.family == "hamming") {
        // fixed (7,4)
    } else if (spec.family == "rm") {
        if (!j.contains("r") || !j.contains("m")) {
            problems.push_back("code: rm family needs r and m");
        } else {
            spec.rm_order = j.at("r").get<int>();
            spec.rm_log_len = j.at("m").get<int>();
        }
    } else if (spec.family == "ldpc-regular") {
        if (!j.contains("n") || !j.contains("k")) {
            problems.push_back("code: ldpc-regular family needs n and k");
        } else {
            spec.n = j.at("n").get<int>();
            spec.k = j.at("k").get<int>();
        }
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    } else {
        problems.push_back("code.family: unknown family '" + spec.family + "'");
    }
    return spec;
}

}  // namespace

ParityCheckMatrix build_code(const CodeSpec& spec) {
    if (!spec.alist_path.empty()) return load_alist_file(spec.alist_path);
    if (spec.family == "hamming") {
        return ParityCheckMatrix(3, 7,
                                 {{0, 0}, {0, 2}, {0, 4}, {0, 6},
                                  {1, 1}, {1, 2}, {1, 5}, {1, 6},
                                  {2, 3}, {2, 4}, {2, 5}, {2, 6}});
    }
    if (spec.family == "rm") return build_rm_code(spec.rm_order, spec.rm_log_len).check;
    if (spec.family == "ldpc-regular") return build_regular_ldpc(spec.n, spec.k, spec.seed);
    throw std::runtime_error("build_code: empty code specification");
}

SolverOptions SimConfig::solver_options() const {
    SolverOptions options;
    options.eps_abs = solver.eps;
    options.max_iterations = solver.max_iterations;
    return options;
}

SimConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("configuration is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("configuration root must be a JSON object");

    std::vector<std::string> problems;
    reject_unknown(j,
                   {"master_seed", "num_rx", "user_gains", "contaminators", "code",
                    "permutation_seeds", "receivers", "snr_db", "frames_per_point",
                    "diag_loading_mult", "alpha", "pilot_len", "covariance_snapshots",
                    "formulation", "degree_cap", "solver", "threads"},
                   "config", problems);

    SimConfig config;
    try {
        if (j.contains("master_seed")) config.master_seed = j.at("master_seed").get<std::uint64_t>();
        if (j.contains("num_rx")) config.num_rx = j.at("num_rx").get<int>();
        if (j.contains("user_gains")) {
            config.user_gains = j.at("user_gains").get<std::vector<double>>();
        }
        if (j.contains("contaminators")) {
            config.contaminators = j.at("contaminators").get<std::vector<int>>();
        }
        if (j.contains("code")) config.code = parse_code_spec(j.at("code"), problems);
        else problems.push_back("code: required");
        if (j.contains("permutation_seeds")) {
            config.permutation_seeds = j.at("permutation_seeds").get<std::vector<std::uint64_t>>();
        }
        if (j.contains("receivers")) {
            config.receivers = j.at("receivers").get<std::vector<std::string>>();
        }
        if (j.contains("snr_db")) config.snr_db = j.at("snr_db").get<std::vector<double>>();
        if (j.contains("frames_per_point")) {
            config.frames_per_point = j.at("frames_per_point").get<int>();
        }
        if (j.contains("diag_loading_mult")) {
            config.diag_loading_mult = j.at("diag_loading_mult").get<double>();
        }
        if (j.contains("alpha")) config.alpha = j.at("alpha").get<double>();
        if (j.contains("pilot_len")) config.pilot_len = j.at("pilot_len").get<int>();
        if (j.contains("covariance_snapshots")) {
            config.covariance_snapshots = j.at("covariance_snapshots").get<int>();
        }
        if (j.contains("formulation")) config.formulation = j.at("formulation").get<std::string>();
        if (j.contains("degree_cap")) config.degree_cap = j.at("degree_cap").get<int>();
        if (j.contains("threads")) config.threads = j.at("threads").get<int>();
        if (j.contains("solver")) {
            const json& s = j.at("solver");
            reject_unknown(s, {"eps", "max_iterations"}, "solver", problems);
            if (s.contains("eps")) config.solver.eps = s.at("eps").get<double>();
            if (s.contains("max_iterations")) {
                config.solver.max_iterations = s.at("max_iterations").get<int>();
            }
        }
    } catch (const json::exception& e) {
        problems.push_back(std::string("type error: ") + e.what());
    }

    // field validation
    if (config.num_rx < 1) problems.push_back("num_rx: must be >= 1");
    if (config.user_gains.empty()) problems.push_back("user_gains: required, one gain per user");
    for (double g : config.user_gains) {
        if (!(g > 0.0)) {
            problems.push_back("user_gains: gains must be positive");
            break;
        }
    }
    const int num_users = static_cast<int>(config.user_gains.size());
    for (int c : config.contaminators) {
        if (c < 2 || c > num_users) {
            problems.push_back("contaminators: entries are 1-based user indices in [2, num_users]");
            break;
        }
    }
    if (static_cast<int>(config.permutation_seeds.size()) != num_users) {
        problems.push_back("permutation_seeds: need exactly one seed per user");
    }
    if (config.receivers.empty()) problems.push_back("receivers: need at least one receiver");
    for (const auto& r : config.receivers) {
        if (r != "dlmv" && r != "qp" && r != "joint-qp") {
            problems.push_back("receivers: unknown receiver '" + r + "'");
        }
    }
    if (config.snr_db.empty()) problems.push_back("snr_db: need at least one SNR point");
    if (config.frames_per_point < 1) problems.push_back("frames_per_point: must be >= 1");
    if (!(config.diag_loading_mult >= 0.0)) problems.push_back("diag_loading_mult: must be >= 0");
    if (!(config.alpha > 0.0)) problems.push_back("alpha: must be > 0");
    if (config.pilot_len < 1) problems.push_back("pilot_len: must be >= 1");
    if (config.covariance_snapshots < 0) problems.push_back("covariance_snapshots: must be >= 0");
    if (config.degree_cap < 2) problems.push_back("degree_cap: must be >= 2");
    if (config.solver.eps <= 0.0) problems.push_back("solver.eps: must be > 0");
    if (config.solver.max_iterations < 1) problems.push_back("solver.max_iterations: must be >= 1");
    if (config.threads < 0) problems.push_back("threads: must be >= 0");
    try {
        parse_formulation(config.formulation);
    } catch (const std::exception& e) {
        problems.push_back(std::string("formulation: ") + e.what());
    }

    if (!problems.empty()) fail(problems);
    return config;
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace lprx
