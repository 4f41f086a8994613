#include <doctest.h>

#include <stdexcept>

#include <set>

#include "lprx/trellis.hpp"

using namespace lprx;

TEST_CASE("(5,7) terminated trellis has the standard shape") {
    const Trellis trellis = build_conv_trellis({"5", "7"}, 4, true);
    CHECK(trellis.memory == 2);
    CHECK(trellis.num_sections == 6);  // L + 2 tail sections
    CHECK(trellis.body_sections == 4);
    CHECK(trellis.outputs_per_section == 2);
    CHECK(trellis.start_state == 0);
    CHECK(trellis.end_state == 0);
    CHECK(trellis.states_at.front().size() == 1);
    CHECK(trellis.states_at.back().size() == 1);

    // interior boundaries carry all 4 states once the register fills
    CHECK(trellis.states_at[2].size() == 4);
    CHECK(trellis.states_at[3].size() == 4);

    // full body sections have 2 outgoing edges per state = 8 edges
    int edges_section2 = 0, edges_section3 = 0;
    for (const auto& e : trellis.edges) {
        if (e.section == 2) ++edges_section2;
        if (e.section == 3) ++edges_section3;
    }
    CHECK(edges_section2 == 8);
    CHECK(edges_section3 == 2 * 4);
}

TEST_CASE("memoryless generator gives a single-state chain") {
    const Trellis trellis = build_conv_trellis({"1"}, 1, true);
    CHECK(trellis.memory == 0);
    CHECK(trellis.num_sections == 1);
    CHECK(trellis.edges.size() == 2);
    for (const auto& boundary : trellis.states_at) CHECK(boundary.size() == 1);
}

TEST_CASE("all-zero input produces the all-zero path") {
    const Trellis trellis = build_conv_trellis({"5", "7"}, 6, true);
    const auto path = trellis.encode_path(BitVector(6, 0));
    CHECK(trellis.path_output(path) == BitVector(trellis.num_output_positions(), 0));
}

TEST_CASE("every start-to-end path is a codeword pair (exhaustive L=6)") {
    const int frame = 6;
    const Trellis trellis = build_conv_trellis({"5", "7"}, frame, true);

    // reference encoder: shift register, MSB of the polynomial taps the
    // current input
    auto reference_encode = [&](const BitVector& input) {
        BitVector out;
        unsigned reg = 0;
        auto emit = [&](int bit) {
            const unsigned word = (static_cast<unsigned>(bit) << 2) | reg;
            out.push_back(static_cast<std::uint8_t>(__builtin_popcount(word & 05u) & 1));
            out.push_back(static_cast<std::uint8_t>(__builtin_popcount(word & 07u) & 1));
            reg = word >> 1;
        };
        for (int i = 0; i < frame; ++i) emit(input[i]);
        emit(0);
        emit(0);
        return out;
    };

    std::set<BitVector> trellis_outputs;
    for (int word = 0; word < (1 << frame); ++word) {
        BitVector input(frame);
        for (int i = 0; i < frame; ++i) input[i] = (word >> i) & 1;
        const auto path = trellis.encode_path(input);
        CHECK(trellis.path_input(path) == input);
        const BitVector output = trellis.path_output(path);
        CHECK(output == reference_encode(input));
        trellis_outputs.insert(output);
    }
    CHECK(trellis_outputs.size() == 1u << frame);

    // index sets: every edge with a one output lands in O_j, inputs in I_j
    const auto output_sets = trellis.output_one_edges();
    CHECK(static_cast<int>(output_sets.size()) == trellis.num_output_positions());
    const auto input_sets = trellis.input_one_edges();
    CHECK(static_cast<int>(input_sets.size()) == frame);
    for (int j = 0; j < frame; ++j) {
        for (int e : input_sets[j]) CHECK(trellis.edges[e].input_bit == 1);
    }
}

TEST_CASE("build_conv_trellis validates its inputs") {
    CHECK_THROWS_AS(build_conv_trellis({}, 4, true), std::invalid_argument);
    CHECK_THROWS_AS(build_conv_trellis({"0"}, 4, true), std::invalid_argument);
    CHECK_THROWS_AS(build_conv_trellis({"5", "7"}, 0, true), std::invalid_argument);
    CHECK_THROWS_AS(build_conv_trellis({"777"}, 4, true), std::invalid_argument);  // K = 9
    CHECK_THROWS_AS(build_conv_trellis({"8"}, 4, true), std::invalid_argument);
}

TEST_CASE("unterminated trellis drains through the virtual sink") {
    const Trellis trellis = build_conv_trellis({"5", "7"}, 3, false);
    CHECK(trellis.end_state == -1);
    CHECK(trellis.num_sections == 3);
    CHECK(trellis.states_at.back().size() == 4);
}
