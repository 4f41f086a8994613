#include <doctest.h>

#include <stdexcept>

#include <set>

#include "lprx/codes.hpp"
#include "lprx/rng.hpp"

using namespace lprx;

namespace {

// hand-written alist for the 3x7 Hamming check matrix (bits x checks header,
// 1-based indices, zero padding)
const char* kHammingAlist =
    "7 3\n"
    "3 4\n"
    "1 1 2 1 2 2 3\n"
    "4 4 4\n"
    "1 0 0\n"
    "2 0 0\n"
    "1 2 0\n"
    "3 0 0\n"
    "1 3 0\n"
    "2 3 0\n"
    "1 2 3\n"
    "1 3 5 7\n"
    "2 3 6 7\n"
    "4 5 6 7\n";

ParityCheckMatrix hamming74() { return parse_alist(kHammingAlist); }

}  // namespace

TEST_CASE("parse_alist reads the Hamming(7,4) matrix") {
    const auto matrix = hamming74();
    CHECK(matrix.num_checks() == 3);
    CHECK(matrix.num_bits() == 7);
    for (int i = 0; i < 3; ++i) CHECK(matrix.neighbors(i).size() == 4);
    CHECK(matrix.neighbors(0) == std::vector<int>{0, 2, 4, 6});
    CHECK(matrix.neighbors(2) == std::vector<int>{3, 4, 5, 6});
}

TEST_CASE("parse_alist handles the single-parity check") {
    const auto matrix = parse_alist("2 1\n1 2\n1 1\n2\n1\n1\n1 2\n");
    CHECK(matrix.num_checks() == 1);
    CHECK(matrix.neighbors(0) == std::vector<int>{0, 1});
}

TEST_CASE("parse_alist rejects out-of-range indices") {
    // bit adjacency references check 2 of 1
    CHECK_THROWS_WITH_AS(parse_alist("2 1\n1 2\n1 1\n2\n2\n1\n1 2\n"),
                         doctest::Contains("out of range"), std::runtime_error);
    // malformed header
    CHECK_THROWS_AS(parse_alist("x 3\n"), std::runtime_error);
    // degree mismatch between declaration and list
    CHECK_THROWS_AS(parse_alist("2 1\n1 2\n1 1\n2\n1\n1\n1 0\n"), std::runtime_error);
}

TEST_CASE("alist round-trips") {
    const auto matrix = hamming74();
    const auto again = parse_alist(serialize_alist(matrix));
    CHECK(serialize_alist(again) == serialize_alist(matrix));
    CHECK(again.num_bits() == matrix.num_bits());
    for (int i = 0; i < matrix.num_checks(); ++i) {
        CHECK(again.neighbors(i) == matrix.neighbors(i));
    }
}

TEST_CASE("encode: all-zero message gives the all-zero codeword") {
    const auto matrix = hamming74();
    const BitVector message(4, 0);
    const BitVector codeword = encode(matrix, message);
    CHECK(codeword == BitVector(7, 0));
}

TEST_CASE("encode enumerates exactly the Hamming codebook") {
    const auto matrix = hamming74();
    SystematicEncoder encoder(matrix);
    CHECK(encoder.dimension() == 4);

    // independent oracle: brute-force scan of all 2^7 vectors
    std::set<BitVector> oracle;
    for (int word = 0; word < 128; ++word) {
        BitVector c(7);
        for (int j = 0; j < 7; ++j) c[j] = (word >> j) & 1;
        if (matrix.is_codeword(c)) oracle.insert(c);
    }
    CHECK(oracle.size() == 16);

    std::set<BitVector> produced;
    for (int word = 0; word < 16; ++word) {
        BitVector message(4);
        for (int i = 0; i < 4; ++i) message[i] = (word >> i) & 1;
        const BitVector codeword = encoder.encode(message);
        CHECK(matrix.is_codeword(codeword));
        // systematic positions carry the message
        for (int i = 0; i < 4; ++i) {
            CHECK(codeword[encoder.message_positions()[i]] == message[i]);
        }
        produced.insert(codeword);
    }
    CHECK(produced == oracle);
}

TEST_CASE("encode rejects wrong message length") {
    CHECK_THROWS_AS(encode(hamming74(), BitVector(5, 0)), std::invalid_argument);
}

TEST_CASE("RM(1,3) is the (8,4) self-dual code") {
    const RmCode code = build_rm_code(1, 3);
    CHECK(code.generator.length() == 8);
    CHECK(code.generator.dimension() == 4);
    // every generator row satisfies every check
    for (const auto& row : code.generator.rows) {
        CHECK(code.check.is_codeword(row));
    }
    // minimum weight of kept rows is 4 = 2^(3-1)
    for (const auto& row : code.generator.rows) {
        int weight = 0;
        for (auto b : row) weight += b;
        CHECK(weight >= 4);
    }
}

TEST_CASE("RM(n,n) keeps all rows, RM(0,n) is the repetition code") {
    const RmCode full = build_rm_code(3, 3);
    CHECK(full.generator.dimension() == 8);
    CHECK(full.check.num_checks() == 0);

    const RmCode repetition = build_rm_code(0, 3);
    CHECK(repetition.generator.dimension() == 1);
    for (auto b : repetition.generator.rows[0]) CHECK(b == 1);
    CHECK(repetition.check.num_checks() == 7);
    for (const auto& row : repetition.generator.rows) {
        CHECK(repetition.check.is_codeword(row));
    }
}

TEST_CASE("build_rm_code rejects bad orders") {
    CHECK_THROWS_AS(build_rm_code(-1, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_rm_code(4, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_rm_code(2, 11), std::invalid_argument);
}

TEST_CASE("permutations are deterministic, invertible and seed-sensitive") {
    const Permutation p1 = build_permutation(568, 256);
    const Permutation p2 = build_permutation(568, 256);
    CHECK(p1.map == p2.map);

    const Permutation q = build_permutation(193, 256);
    CHECK(p1.map != q.map);

    Rng rng(5);
    BitVector data(256);
    for (auto& b : data) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
    const BitVector there = p1.apply(data);
    const BitVector back = p1.inverse().apply(there);
    CHECK(back == data);
    // identity composition on the mapping itself
    const BitVector same = p1.apply(p1.inverse().apply(data));
    CHECK(same == data);
}

TEST_CASE("regular LDPC construction has the advertised shape") {
    const auto matrix = build_regular_ldpc(256, 192, 7);
    CHECK(matrix.num_checks() == 64);
    CHECK(matrix.num_bits() == 256);

    SystematicEncoder encoder(matrix);
    CHECK(encoder.rank() == 64);
    CHECK(encoder.dimension() == 192);

    // column weights: all 2 except one weight-3 rank-fix column
    const auto cols = matrix.bit_neighbors();
    int weight3 = 0;
    for (const auto& col : cols) {
        CHECK(col.size() >= 2);
        CHECK(col.size() <= 3);
        if (col.size() == 3) ++weight3;
    }
    CHECK(weight3 == 1);

    // no duplicate weight-2 columns (would be a weight-2 codeword)
    std::set<std::vector<int>> seen;
    for (const auto& col : cols) {
        if (col.size() == 2) {
            CHECK(!seen.count(col));
            seen.insert(col);
        }
    }

    // encoding round trip
    Rng rng(3);
    BitVector message(192);
    for (auto& b : message) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
    CHECK(matrix.is_codeword(encoder.encode(message)));

    // determinism
    const auto again = build_regular_ldpc(256, 192, 7);
    CHECK(serialize_alist(again) == serialize_alist(matrix));
}
