#include "lprx/polytope.hpp"

#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lprx {

CheckFormulation parse_formulation(const std::string& name) {
    if (name == "exact") return CheckFormulation::exact;
    if (name == "fs") return CheckFormulation::fs;
    if (name == "decomposed") return CheckFormulation::decomposed;
    throw std::invalid_argument("unknown formulation '" + name +
                                "' (expected exact, fs or decomposed)");
}

std::string formulation_name(CheckFormulation f) {
    switch (f) {
        case CheckFormulation::exact: return "exact";
        case CheckFormulation::fs: return "fs";
        case CheckFormulation::decomposed: return "decomposed";
    }
    return "?";
}

std::vector<int> add_bit_variables(LinearConstraintSystem& sys, const std::string& tag,
                                   int count) {
    std::vector<int> ids;
    ids.reserve(count);
    for (int j = 0; j < count; ++j) {
        ids.push_back(sys.add_variable("f/" + tag + "/" + std::to_string(j), VarRole::bit));
    }
    return ids;
}

namespace {

std::string mask_hex(unsigned mask) {
    std::ostringstream out;
    out << std::hex << mask;
    return out.str();
}

void require_degree(std::span<const int> bits, int degree_cap, const char* op) {
    if (bits.empty()) throw std::invalid_argument(std::string(op) + ": empty neighborhood");
    if (static_cast<int>(bits.size()) > degree_cap) {
        throw std::invalid_argument(std::string(op) + ": check degree " +
                                    std::to_string(bits.size()) + " exceeds cap " +
                                    std::to_string(degree_cap) +
                                    "; use decompose_check for high-degree checks");
    }
}

}  // namespace

void exact_check_constraints(LinearConstraintSystem& sys, std::span<const int> check_bits,
                             const std::string& check_tag, int degree_cap) {
    require_degree(check_bits, degree_cap, "exact_check_constraints");
    const int d = static_cast<int>(check_bits.size());

    // indicator per even-cardinality subset, the empty set included (the
    // all-zero local codeword)
    std::vector<int> indicator_of_mask(std::size_t{1} << d, -1);
    std::vector<LinearTerm> sum_row;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        if (std::popcount(mask) % 2 != 0) continue;
        const int v = sys.add_variable("v/" + check_tag + "/" + mask_hex(mask),
                                       VarRole::indicator);
        indicator_of_mask[mask] = v;
        sum_row.push_back({v, 1.0});
    }
    sys.add_equality(sum_row, 1.0);

    for (int pos = 0; pos < d; ++pos) {
        std::vector<LinearTerm> row;
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            if (indicator_of_mask[mask] >= 0 && (mask >> pos) & 1u) {
                row.push_back({indicator_of_mask[mask], 1.0});
            }
        }
        row.push_back({check_bits[pos], -1.0});
        sys.add_equality(row, 0.0);
    }
}

void fs_check_constraints(LinearConstraintSystem& sys, std::span<const int> check_bits,
                          const std::string& check_tag, int degree_cap) {
    require_degree(check_bits, degree_cap, "fs_check_constraints");
    (void)check_tag;
    const int d = static_cast<int>(check_bits.size());
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        const int weight = std::popcount(mask);
        if (weight % 2 != 1) continue;
        std::vector<LinearTerm> row;
        for (int pos = 0; pos < d; ++pos) {
            row.push_back({check_bits[pos], ((mask >> pos) & 1u) ? 1.0 : -1.0});
        }
        sys.add_inequality(row, static_cast<double>(weight) - 1.0);
    }
}

namespace {

// triangle relaxation of a degree-3 parity check (lower bounds come from the
// [0,1] boxes on the three variables)
void add_triangle_group(LinearConstraintSystem& sys, int a, int b, int c) {
    sys.add_inequality({{a, 1.0}, {b, -1.0}, {c, -1.0}}, 0.0);
    sys.add_inequality({{a, -1.0}, {b, 1.0}, {c, -1.0}}, 0.0);
    sys.add_inequality({{a, -1.0}, {b, -1.0}, {c, 1.0}}, 0.0);
    sys.add_inequality({{a, 1.0}, {b, 1.0}, {c, 1.0}}, 2.0);
}

}  // namespace

std::vector<int> decompose_check(LinearConstraintSystem& sys, std::span<const int> check_bits,
                                 const std::string& check_tag) {
    const int d = static_cast<int>(check_bits.size());
    if (d < 2) {
        throw std::invalid_argument(
            "decompose_check: degree-1 checks pin the bit to zero; set the bound instead");
    }
    if (d == 2) {
        sys.add_equality({{check_bits[0], 1.0}, {check_bits[1], -1.0}}, 0.0);
        return {};
    }
    if (d == 3) {
        add_triangle_group(sys, check_bits[0], check_bits[1], check_bits[2]);
        return {};
    }
    // left-to-right chain: (b0,b1,a0), (a0,b2,a1), ..., (a_{d-4}, b_{d-2}, b_{d-1})
    std::vector<int> aux;
    for (int k = 0; k < d - 3; ++k) {
        aux.push_back(
            sys.add_variable("abit/" + check_tag + "/" + std::to_string(k), VarRole::aux_bit));
    }
    add_triangle_group(sys, check_bits[0], check_bits[1], aux[0]);
    for (int k = 1; k < d - 3; ++k) {
        add_triangle_group(sys, aux[k - 1], check_bits[k + 1], aux[k]);
    }
    add_triangle_group(sys, aux[d - 4], check_bits[d - 2], check_bits[d - 1]);
    return aux;
}

void add_check_constraints(LinearConstraintSystem& sys, std::span<const int> check_bits,
                           const std::string& check_tag, CheckFormulation formulation,
                           int degree_cap) {
    if (check_bits.size() == 1) {
        // degree-1 check forces the bit to zero regardless of formulation
        sys.set_bounds(check_bits[0], 0.0, 0.0);
        return;
    }
    switch (formulation) {
        case CheckFormulation::exact:
            exact_check_constraints(sys, check_bits, check_tag, degree_cap);
            return;
        case CheckFormulation::fs:
            fs_check_constraints(sys, check_bits, check_tag, degree_cap);
            return;
        case CheckFormulation::decomposed: decompose_check(sys, check_bits, check_tag); return;
    }
}

void add_code_constraints(LinearConstraintSystem& sys, const ParityCheckMatrix& code,
                          std::span<const int> bits, CheckFormulation formulation,
                          int degree_cap) {
    if (static_cast<int>(bits.size()) != code.num_bits()) {
        throw std::invalid_argument("add_code_constraints: bit variable count mismatch");
    }
    for (int i = 0; i < code.num_checks(); ++i) {
        std::vector<int> check_bits;
        for (int j : code.neighbors(i)) check_bits.push_back(bits[j]);
        add_check_constraints(sys, check_bits, std::to_string(i), formulation, degree_cap);
    }
}

FlowVars flow_constraints(LinearConstraintSystem& sys, const Trellis& trellis,
                          const std::string& label) {
    FlowVars flow;
    flow.label = label;
    flow.edge_vars.reserve(trellis.edges.size());
    for (int e = 0; e < static_cast<int>(trellis.edges.size()); ++e) {
        const auto& edge = trellis.edges[e];
        flow.edge_vars.push_back(sys.add_variable("flow/" + label + "/" +
                                                      std::to_string(edge.section) + "/" +
                                                      std::to_string(e),
                                                  VarRole::flow));
    }

    // per-boundary, per-state edge lists
    std::vector<std::map<int, std::vector<int>>> in_at(trellis.num_sections + 1);
    std::vector<std::map<int, std::vector<int>>> out_at(trellis.num_sections + 1);
    for (int e = 0; e < static_cast<int>(trellis.edges.size()); ++e) {
        const auto& edge = trellis.edges[e];
        out_at[edge.section][edge.from_state].push_back(e);
        in_at[edge.section + 1][edge.to_state].push_back(e);
    }

    auto sum_row = [&](const std::vector<int>& edge_ids, double sign) {
        std::vector<LinearTerm> row;
        for (int e : edge_ids) row.push_back({flow.edge_vars[e], sign});
        return row;
    };

    // unit source
    sys.add_equality(sum_row(out_at[0][trellis.start_state], 1.0), 1.0);
    // unit sink; an unterminated trellis drains through the virtual sink
    std::vector<int> sink_edges;
    if (trellis.end_state >= 0) {
        sink_edges = in_at[trellis.num_sections][trellis.end_state];
    } else {
        for (const auto& [state, ids] : in_at[trellis.num_sections]) {
            sink_edges.insert(sink_edges.end(), ids.begin(), ids.end());
        }
    }
    sys.add_equality(sum_row(sink_edges, 1.0), 1.0);
    // conservation at interior nodes
    for (int boundary = 1; boundary < trellis.num_sections; ++boundary) {
        for (int state : trellis.states_at[boundary]) {
            std::vector<LinearTerm> row = sum_row(in_at[boundary][state], 1.0);
            const auto outgoing = sum_row(out_at[boundary][state], -1.0);
            row.insert(row.end(), outgoing.begin(), outgoing.end());
            sys.add_equality(row, 0.0);
        }
    }
    return flow;
}

TurboVars turbo_connecting_constraints(LinearConstraintSystem& sys, const Trellis& trellis_a,
                                       const FlowVars& flow_a, const Trellis& trellis_b,
                                       const FlowVars& flow_b, const Permutation& perm) {
    if (trellis_a.body_sections != trellis_b.body_sections) {
        throw std::invalid_argument(
            "turbo_connecting_constraints: constituent systematic lengths differ");
    }
    if (perm.size() != trellis_a.body_sections) {
        throw std::invalid_argument("turbo_connecting_constraints: permutation length mismatch");
    }
    const int systematic_len = trellis_a.body_sections;

    TurboVars vars;
    for (int j = 0; j < systematic_len; ++j) {
        vars.systematic.push_back(sys.add_variable("xs/" + std::to_string(j), VarRole::bit));
    }

    auto connect_outputs = [&](const Trellis& trellis, const FlowVars& flow,
                               const std::string& label) {
        std::vector<int> xs;
        const auto output_sets = trellis.output_one_edges();
        for (int j = 0; j < trellis.num_output_positions(); ++j) {
            const int x =
                sys.add_variable("x/" + label + "/" + std::to_string(j), VarRole::bit);
            xs.push_back(x);
            std::vector<LinearTerm> row{{x, 1.0}};
            for (int e : output_sets[j]) row.push_back({flow.edge_vars[e], -1.0});
            sys.add_equality(row, 0.0);
        }
        return xs;
    };
    vars.output_a = connect_outputs(trellis_a, flow_a, flow_a.label);
    vars.output_b = connect_outputs(trellis_b, flow_b, flow_b.label);

    const auto input_a = trellis_a.input_one_edges();
    const auto input_b = trellis_b.input_one_edges();
    for (int j = 0; j < systematic_len; ++j) {
        std::vector<LinearTerm> row{{vars.systematic[j], 1.0}};
        for (int e : input_a[j]) row.push_back({flow_a.edge_vars[e], -1.0});
        sys.add_equality(row, 0.0);
    }
    for (int j = 0; j < systematic_len; ++j) {
        std::vector<LinearTerm> row{{vars.systematic[perm.map[j]], 1.0}};
        for (int e : input_b[j]) row.push_back({flow_b.edge_vars[e], -1.0});
        sys.add_equality(row, 0.0);
    }
    return vars;
}

}  // namespace lprx
