#include "lprx/trellis.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

namespace lprx {

std::vector<std::vector<int>> Trellis::output_one_edges() const {
    std::vector<std::vector<int>> sets(num_output_positions());
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        const auto& edge = edges[e];
        for (int s = 0; s < outputs_per_section; ++s) {
            if (edge.output_bits[s]) {
                sets[edge.section * outputs_per_section + s].push_back(e);
            }
        }
    }
    return sets;
}

std::vector<std::vector<int>> Trellis::input_one_edges() const {
    std::vector<std::vector<int>> sets(num_input_positions());
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        const auto& edge = edges[e];
        if (edge.section < body_sections && edge.input_bit) {
            sets[edge.section].push_back(e);
        }
    }
    return sets;
}

std::vector<int> Trellis::outgoing(int section, int state) const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        if (edges[e].section == section && edges[e].from_state == state) out.push_back(e);
    }
    return out;
}

std::vector<int> Trellis::encode_path(const BitVector& input) const {
    if (static_cast<int>(input.size()) != body_sections) {
        throw std::invalid_argument("encode_path: input length must equal body sections");
    }
    std::vector<int> path;
    int state = start_state;
    for (int section = 0; section < num_sections; ++section) {
        const int want_input = section < body_sections ? (input[section] & 1) : 0;
        int found = -1;
        for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
            const auto& edge = edges[e];
            if (edge.section == section && edge.from_state == state &&
                edge.input_bit == want_input) {
                found = e;
                break;
            }
        }
        if (found < 0) throw std::logic_error("encode_path: missing transition");
        path.push_back(found);
        state = edges[found].to_state;
    }
    return path;
}

BitVector Trellis::path_output(const std::vector<int>& path) const {
    BitVector out(num_output_positions(), 0);
    for (int e : path) {
        const auto& edge = edges[e];
        for (int s = 0; s < outputs_per_section; ++s) {
            out[edge.section * outputs_per_section + s] = edge.output_bits[s];
        }
    }
    return out;
}

BitVector Trellis::path_input(const std::vector<int>& path) const {
    BitVector in(num_input_positions(), 0);
    for (int e : path) {
        const auto& edge = edges[e];
        if (edge.section < body_sections) in[edge.section] = static_cast<std::uint8_t>(edge.input_bit);
    }
    return in;
}

namespace {

unsigned parse_octal(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty generator polynomial");
    unsigned value = 0;
    for (char c : text) {
        if (c < '0' || c > '7') {
            throw std::invalid_argument("generator polynomial '" + text + "' is not octal");
        }
        value = value * 8 + static_cast<unsigned>(c - '0');
    }
    return value;
}

}  // namespace

Trellis build_conv_trellis(const std::vector<std::string>& octal_generators, int frame_length,
                           bool terminated) {
    if (octal_generators.empty()) {
        throw std::invalid_argument("build_conv_trellis: need at least one generator polynomial");
    }
    if (frame_length < 1) throw std::invalid_argument("build_conv_trellis: frame length >= 1");

    std::vector<unsigned> polys;
    unsigned all = 0;
    for (const auto& g : octal_generators) {
        polys.push_back(parse_octal(g));
        all |= polys.back();
    }
    if (all == 0) throw std::invalid_argument("build_conv_trellis: all-zero generator polynomials");
    const int constraint_len = std::bit_width(all);
    if (constraint_len > 8) {
        throw std::invalid_argument("build_conv_trellis: constraint length must be <= 8");
    }
    const int memory = constraint_len - 1;
    const int num_states = 1 << memory;

    Trellis trellis;
    trellis.memory = memory;
    trellis.body_sections = frame_length;
    trellis.num_sections = frame_length + (terminated ? memory : 0);
    trellis.outputs_per_section = static_cast<int>(polys.size());
    trellis.start_state = 0;
    // -1 marks the virtual common sink of an unterminated frame; every state
    // on the final boundary feeds it
    trellis.end_state = terminated ? 0 : -1;

    // Register word: bit (memory) = current input, bits (memory-1 .. 0) = state
    // (most recent past input in the highest state bit). Output stream s is
    // the parity of polys[s] & word; next state drops the oldest bit.
    auto step = [&](int state, int input, std::vector<std::uint8_t>& out_bits) {
        const unsigned word = (static_cast<unsigned>(input) << memory) | static_cast<unsigned>(state);
        out_bits.clear();
        for (unsigned p : polys) {
            out_bits.push_back(static_cast<std::uint8_t>(std::popcount(p & word) & 1));
        }
        return static_cast<int>(word >> 1);
    };

    // forward reachability
    std::vector<std::set<int>> reach(trellis.num_sections + 1);
    reach[0].insert(trellis.start_state);
    std::vector<std::uint8_t> scratch;
    for (int section = 0; section < trellis.num_sections; ++section) {
        const bool tail = section >= trellis.body_sections;
        for (int state : reach[section]) {
            for (int input = 0; input < (tail ? 1 : 2); ++input) {
                reach[section + 1].insert(step(state, input, scratch));
            }
        }
    }
    // backward co-reachability (terminated frames must end in state 0)
    std::vector<std::set<int>> alive(trellis.num_sections + 1);
    if (terminated) {
        alive[trellis.num_sections].insert(0);
    } else {
        for (int s = 0; s < num_states; ++s) alive[trellis.num_sections].insert(s);
    }
    for (int section = trellis.num_sections - 1; section >= 0; --section) {
        const bool tail = section >= trellis.body_sections;
        for (int state : reach[section]) {
            for (int input = 0; input < (tail ? 1 : 2); ++input) {
                if (alive[section + 1].count(step(state, input, scratch))) {
                    alive[section].insert(state);
                }
            }
        }
    }
    if (!alive[0].count(trellis.start_state)) {
        throw std::logic_error("build_conv_trellis: start state cannot reach end state");
    }

    for (int section = 0; section <= trellis.num_sections; ++section) {
        std::vector<int> states;
        for (int s : reach[section]) {
            if (alive[section].count(s)) states.push_back(s);
        }
        trellis.states_at.push_back(states);
    }
    for (int section = 0; section < trellis.num_sections; ++section) {
        const bool tail = section >= trellis.body_sections;
        for (int state : trellis.states_at[section]) {
            for (int input = 0; input < (tail ? 1 : 2); ++input) {
                TrellisEdge edge;
                edge.section = section;
                edge.from_state = state;
                edge.input_bit = input;
                edge.to_state = step(state, input, edge.output_bits);
                const auto& next = trellis.states_at[section + 1];
                if (std::binary_search(next.begin(), next.end(), edge.to_state)) {
                    trellis.edges.push_back(std::move(edge));
                }
            }
        }
    }
    return trellis;
}

}  // namespace lprx
