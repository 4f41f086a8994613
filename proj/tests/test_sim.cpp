#include <doctest.h>

#include <stdexcept>

#include <sstream>

#include "lprx/sim.hpp"

using namespace lprx;

namespace {

std::string small_config_json(const char* receivers = "[\"dlmv\"]", double snr = 60.0) {
    std::ostringstream out;
    out << R"({
      "master_seed": 20250810,
      "num_rx": 4,
      "user_gains": [1.0],
      "contaminators": [],
      "code": {"family": "rm", "r": 1, "m": 3},
      "permutation_seeds": [568],
      "receivers": )"
        << receivers << R"(,
      "snr_db": [)"
        << snr << R"(],
      "frames_per_point": 10,
      "diag_loading_mult": 200.0,
      "alpha": 75.0,
      "pilot_len": 8,
      "formulation": "exact",
      "solver": {"eps": 1e-7, "max_iterations": 20000},
      "threads": 1
    })";
    return out.str();
}

}  // namespace

TEST_CASE("config parsing: unknown keys and invalid fields are rejected by name") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"bogus_key": 1})"), doctest::Contains("bogus_key"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_config(R"({"code": {"family": "rm", "r": 1, "m": 3},
                                           "user_gains": [-1.0],
                                           "permutation_seeds": [1],
                                           "receivers": ["dlmv"],
                                           "snr_db": [1.0]})"),
                         doctest::Contains("user_gains"), std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_config("not json"), doctest::Contains("JSON"), std::runtime_error);
    CHECK_NOTHROW(parse_config(small_config_json()));
}

TEST_CASE("build_code covers the three families") {
    CodeSpec hamming;
    hamming.family = "hamming";
    CHECK(build_code(hamming).num_bits() == 7);

    CodeSpec rm;
    rm.family = "rm";
    rm.rm_order = 1;
    rm.rm_log_len = 3;
    CHECK(build_code(rm).num_bits() == 8);

    CodeSpec ldpc;
    ldpc.family = "ldpc-regular";
    ldpc.n = 96;
    ldpc.k = 48;
    ldpc.seed = 5;
    const auto matrix = build_code(ldpc);
    CHECK(matrix.num_bits() == 96);
    CHECK(matrix.num_checks() == 48);
}

TEST_CASE("noiseless single-user DLMV sweep is error free") {
    const SimConfig config = parse_config(small_config_json());
    const auto records = run_ber_sweep(config);
    REQUIRE(records.size() == 1);
    CHECK(records[0].receiver == "dlmv");
    CHECK(records[0].bits == 10 * 4);
    CHECK(records[0].bit_errors == 0);
    CHECK(records[0].ber == 0.0);
    CHECK(records[0].frame_errors == 0);
}

TEST_CASE("sweeps are reproducible and thread-count independent") {
    SimConfig config = parse_config(small_config_json("[\"dlmv\", \"joint-qp\"]", 8.0));
    config.frames_per_point = 6;
    const auto once = run_ber_sweep(config);
    const auto twice = run_ber_sweep(config);
    CHECK(emit_csv(once) == emit_csv(twice));

    config.threads = 2;
    const auto parallel = run_ber_sweep(config);
    CHECK(emit_csv(parallel) == emit_csv(once));
}

TEST_CASE("emit_csv: header, sorting, parse-back") {
    std::vector<BerRecord> records;
    BerRecord b;
    b.receiver = "joint-qp";
    b.snr_db = 8.0;
    b.bits = 1920;
    b.bit_errors = 3;
    b.frames = 10;
    b.frame_errors = 2;
    b.ber = 3.0 / 1920.0;
    BerRecord a = b;
    a.receiver = "dlmv";
    a.snr_db = 12.0;
    records.push_back(b);
    records.push_back(a);

    const std::string csv = emit_csv(records);
    std::istringstream lines(csv);
    std::string header, row1, row2;
    std::getline(lines, header);
    CHECK(header == "receiver,snr_db,bits,bit_errors,frames,frame_errors,ber");
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK(row1.substr(0, 4) == "dlmv");
    CHECK(row2.substr(0, 8) == "joint-qp");
    CHECK(row1.find(",12,") != std::string::npos);

    // parse back the counts
    long long bits = 0, errors = 0;
    int frames = 0, frame_errors = 0;
    char comma = 0;
    std::istringstream fields(row2.substr(row2.find(',') + 1));
    double snr = 0.0, ber = 0.0;
    fields >> snr >> comma >> bits >> comma >> errors >> comma >> frames >> comma >>
        frame_errors >> comma >> ber;
    CHECK(bits == 1920);
    CHECK(errors == 3);
    CHECK(frames == 10);
    CHECK(frame_errors == 2);
    CHECK(ber == doctest::Approx(3.0 / 1920.0).epsilon(1e-4));

    CHECK_THROWS_AS(emit_csv({}), std::invalid_argument);
}
