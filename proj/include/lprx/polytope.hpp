#pragma once

#include <span>
#include <string>
#include <vector>

#include "lprx/codes.hpp"
#include "lprx/lcs.hpp"
#include "lprx/trellis.hpp"

namespace lprx {

// LP-relaxation builders for binary parity checks and trellis codes. All
// builders append to an existing system; bit variables are created first
// (add_bit_variables) and referenced by index. Naming scheme, fixed so dumps
// are stable: bits "f/{tag}/{j}", indicators "v/{check}/{subset mask in
// hex}", auxiliary bits "abit/{check}/{k}", flows "flow/{label}/{section}/
// {edge}", trellis code bits "x/{label}/{j}" and "xs/{j}".

enum class CheckFormulation { exact, fs, decomposed };

CheckFormulation parse_formulation(const std::string& name);
std::string formulation_name(CheckFormulation f);

// Registers `count` bit variables f/{tag}/{j}, boxed [0,1].
std::vector<int> add_bit_variables(LinearConstraintSystem& sys, const std::string& tag, int count);

// Exact local-codeword formulation of one check: an indicator per
// even-cardinality subset of the neighborhood (the empty set included), the
// sum-to-one row and one consistency row per bit. 2^(d-1) indicators.
void exact_check_constraints(LinearConstraintSystem& sys, std::span<const int> check_bits,
                             const std::string& check_tag, int degree_cap = 10);

// Forbidden-set formulation: one parity inequality per odd-cardinality
// subset. 2^(d-1) inequalities, bits stay boxed [0,1].
void fs_check_constraints(LinearConstraintSystem& sys, std::span<const int> check_bits,
                          const std::string& check_tag, int degree_cap = 10);

// Degree reduction: chains degree-3 groups through d-3 auxiliary bits and
// relaxes each group to the four triangle rows (plus boxes). Degree 2 is the
// equality f1 = f2. Returns the auxiliary variable ids.
std::vector<int> decompose_check(LinearConstraintSystem& sys, std::span<const int> check_bits,
                                 const std::string& check_tag);

// One check with the selected formulation; exact/fs fall back to the
// decomposition above the degree cap only if `auto_decompose`.
void add_check_constraints(LinearConstraintSystem& sys, std::span<const int> check_bits,
                           const std::string& check_tag, CheckFormulation formulation,
                           int degree_cap = 10);

// All checks of a parity-check matrix over existing bit variables.
void add_code_constraints(LinearConstraintSystem& sys, const ParityCheckMatrix& code,
                          std::span<const int> bits, CheckFormulation formulation,
                          int degree_cap = 10);

struct FlowVars {
    std::string label;
    std::vector<int> edge_vars;  // aligned with trellis.edges
};

// Unit-flow constraints of a trellis: one nonnegative variable per edge,
// source and sink rows pinned to 1, conservation at every interior
// (section, state) node.
FlowVars flow_constraints(LinearConstraintSystem& sys, const Trellis& trellis,
                          const std::string& label);

struct TurboVars {
    std::vector<int> systematic;  // xs/{j}
    std::vector<int> output_a;    // x/a/{j}
    std::vector<int> output_b;
};

// Connecting rows between two constituent flows and the shared systematic
// bits: output bits equal the O_j flow sums, systematic bit j equals the
// I_j sum of flow a, and systematic bit perm(j) equals the I_j sum of flow b.
TurboVars turbo_connecting_constraints(LinearConstraintSystem& sys, const Trellis& trellis_a,
                                       const FlowVars& flow_a, const Trellis& trellis_b,
                                       const FlowVars& flow_b, const Permutation& perm);

}  // namespace lprx
