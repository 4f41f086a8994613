#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lprx/codes.hpp"

namespace lprx {

// State-transition graph of a feedforward convolutional encoder, unrolled
// over the frame. States live on section boundaries: node (section, state)
// with section in [0, num_sections] and only reachable/co-reachable states
// materialized. Edge output bits occupy positions
// section*outputs_per_section + stream in the output word; edge input bits
// occupy position = section (body sections only).
struct TrellisEdge {
    int section = 0;
    int from_state = 0;  // state id at boundary `section`
    int to_state = 0;    // state id at boundary `section + 1`
    int input_bit = 0;
    std::vector<std::uint8_t> output_bits;  // one per generator polynomial
};

class Trellis {
  public:
    int num_sections = 0;       // body + termination tail
    int body_sections = 0;      // number of information positions
    int outputs_per_section = 0;
    int memory = 0;             // constraint length - 1
    int start_state = 0;
    int end_state = 0;  // -1: virtual sink shared by all final states (unterminated)
    std::vector<TrellisEdge> edges;
    // states_at[s] = sorted state ids present at boundary s (0..num_sections)
    std::vector<std::vector<int>> states_at;

    int num_output_positions() const { return num_sections * outputs_per_section; }
    int num_input_positions() const { return body_sections; }

    // O_j: edges whose output bit at global position j is 1.
    std::vector<std::vector<int>> output_one_edges() const;
    // I_j: edges whose input bit is 1 at input position j.
    std::vector<std::vector<int>> input_one_edges() const;

    // Edge indices leaving (section, state) / entering (section+1, state).
    std::vector<int> outgoing(int section, int state) const;

    // Drives an input frame through the trellis; returns the edge path.
    std::vector<int> encode_path(const BitVector& input) const;
    // Output word along a path of edge indices.
    BitVector path_output(const std::vector<int>& path) const;
    BitVector path_input(const std::vector<int>& path) const;
};

// Builds the trellis of the rate-1/n_out feedforward convolutional encoder
// with the given generator polynomials (octal strings, MSB = current input),
// for `frame_length` information bits. With `terminated`, memory tail
// sections with zero input drive the register back to state 0 and only
// states that can still reach the end survive.
Trellis build_conv_trellis(const std::vector<std::string>& octal_generators, int frame_length,
                           bool terminated);

}  // namespace lprx
