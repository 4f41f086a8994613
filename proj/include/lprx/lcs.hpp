#pragma once

#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace lprx {

enum class VarRole { bit, aux_bit, indicator, flow, weight, slack, other };

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Variable {
    std::string name;
    VarRole role = VarRole::other;
    double lo = -kInf;
    double hi = kInf;
};

struct LinearTerm {
    int var = 0;
    double coef = 0.0;
};

struct LinearRow {
    std::vector<LinearTerm> terms;
    double rhs = 0.0;
};

// Registry of named real variables with box bounds plus sparse equality and
// inequality (a.z <= b) rows. Builders append; finished systems are
// immutable by convention and safe to share. Variable and row order is
// insertion order, which makes dumps and solver behavior reproducible.
class LinearConstraintSystem {
  public:
    // bit/aux_bit/indicator roles are forced to the [0,1] box, flow and
    // slack to [0,inf). Duplicate names are rejected.
    int add_variable(const std::string& name, VarRole role);
    int add_variable(const std::string& name, VarRole role, double lo, double hi);

    int find_variable(const std::string& name) const;  // -1 when absent
    int require_variable(const std::string& name) const;
    void set_bounds(int var, double lo, double hi);

    void add_equality(std::vector<LinearTerm> terms, double rhs);
    void add_inequality(std::vector<LinearTerm> terms, double rhs);

    int num_variables() const { return static_cast<int>(variables_.size()); }
    const std::vector<Variable>& variables() const { return variables_; }
    const Variable& variable(int idx) const { return variables_.at(idx); }
    const std::vector<LinearRow>& equalities() const { return equalities_; }
    const std::vector<LinearRow>& inequalities() const { return inequalities_; }

    // Largest constraint/box violation of a fully specified point; exact
    // arithmetic on the stored coefficients, no solver involved.
    double max_violation(std::span<const double> point) const;

    // Plain-text listing (variables, bounds, rows) in deterministic order.
    std::string dump() const;

  private:
    std::vector<LinearTerm> canonicalize(std::vector<LinearTerm> terms) const;

    std::vector<Variable> variables_;
    std::unordered_map<std::string, int> index_;
    std::vector<LinearRow> equalities_;
    std::vector<LinearRow> inequalities_;
};

}  // namespace lprx
