#include "lprx/lcs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lprx {

namespace {
const char* role_name(VarRole role) {
    switch (role) {
        case VarRole::bit: return "bit";
        case VarRole::aux_bit: return "aux_bit";
        case VarRole::indicator: return "indicator";
        case VarRole::flow: return "flow";
        case VarRole::weight: return "weight";
        case VarRole::slack: return "slack";
        case VarRole::other: return "other";
    }
    return "?";
}
}  // namespace

int LinearConstraintSystem::add_variable(const std::string& name, VarRole role) {
    switch (role) {
        case VarRole::bit:
        case VarRole::aux_bit:
        case VarRole::indicator: return add_variable(name, role, 0.0, 1.0);
        case VarRole::flow:
        case VarRole::slack: return add_variable(name, role, 0.0, kInf);
        default: return add_variable(name, role, -kInf, kInf);
    }
}

int LinearConstraintSystem::add_variable(const std::string& name, VarRole role, double lo,
                                         double hi) {
    if (index_.count(name)) {
        throw std::invalid_argument("variable '" + name + "' already registered");
    }
    if ((role == VarRole::bit || role == VarRole::aux_bit || role == VarRole::indicator) &&
        (lo < 0.0 || hi > 1.0)) {
        throw std::invalid_argument("variable '" + name +
                                    "': bit-like roles must stay inside the [0,1] box");
    }
    if (!(lo <= hi)) {
        throw std::invalid_argument("variable '" + name + "': empty box");
    }
    const int idx = static_cast<int>(variables_.size());
    variables_.push_back(Variable{name, role, lo, hi});
    index_.emplace(name, idx);
    return idx;
}

int LinearConstraintSystem::find_variable(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

int LinearConstraintSystem::require_variable(const std::string& name) const {
    const int idx = find_variable(name);
    if (idx < 0) throw std::out_of_range("variable '" + name + "' not registered");
    return idx;
}

void LinearConstraintSystem::set_bounds(int var, double lo, double hi) {
    if (var < 0 || var >= num_variables()) throw std::out_of_range("set_bounds: bad variable");
    if (!(lo <= hi)) throw std::invalid_argument("set_bounds: empty box");
    variables_[var].lo = lo;
    variables_[var].hi = hi;
}

std::vector<LinearTerm> LinearConstraintSystem::canonicalize(std::vector<LinearTerm> terms) const {
    if (terms.empty()) throw std::invalid_argument("constraint row has no terms");
    for (const auto& t : terms) {
        if (t.var < 0 || t.var >= num_variables()) {
            throw std::out_of_range("constraint references unknown variable index " +
                                    std::to_string(t.var));
        }
    }
    std::sort(terms.begin(), terms.end(),
              [](const LinearTerm& a, const LinearTerm& b) { return a.var < b.var; });
    // merge duplicates
    std::vector<LinearTerm> merged;
    for (const auto& t : terms) {
        if (!merged.empty() && merged.back().var == t.var) {
            merged.back().coef += t.coef;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged, [](const LinearTerm& t) { return t.coef == 0.0; });
    if (merged.empty()) throw std::invalid_argument("constraint row is identically zero");
    return merged;
}

void LinearConstraintSystem::add_equality(std::vector<LinearTerm> terms, double rhs) {
    equalities_.push_back(LinearRow{canonicalize(std::move(terms)), rhs});
}

void LinearConstraintSystem::add_inequality(std::vector<LinearTerm> terms, double rhs) {
    inequalities_.push_back(LinearRow{canonicalize(std::move(terms)), rhs});
}

double LinearConstraintSystem::max_violation(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != num_variables()) {
        throw std::invalid_argument("max_violation: point dimension mismatch");
    }
    double worst = 0.0;
    for (int i = 0; i < num_variables(); ++i) {
        const auto& v = variables_[i];
        worst = std::max(worst, v.lo - point[i]);
        worst = std::max(worst, point[i] - v.hi);
    }
    for (const auto& row : equalities_) {
        double acc = -row.rhs;
        for (const auto& t : row.terms) acc += t.coef * point[t.var];
        worst = std::max(worst, std::fabs(acc));
    }
    for (const auto& row : inequalities_) {
        double acc = -row.rhs;
        for (const auto& t : row.terms) acc += t.coef * point[t.var];
        worst = std::max(worst, acc);
    }
    return std::max(worst, 0.0);
}

std::string LinearConstraintSystem::dump() const {
    std::ostringstream out;
    out.precision(12);
    out << "variables " << variables_.size() << "\n";
    for (const auto& v : variables_) {
        out << "  " << v.name << " " << role_name(v.role) << " [" << v.lo << ", " << v.hi << "]\n";
    }
    auto write_row = [&](const LinearRow& row, const char* rel) {
        out << " ";
        for (const auto& t : row.terms) {
            out << " " << (t.coef >= 0 ? "+" : "") << t.coef << " " << variables_[t.var].name;
        }
        out << " " << rel << " " << row.rhs << "\n";
    };
    out << "equalities " << equalities_.size() << "\n";
    for (const auto& row : equalities_) write_row(row, "=");
    out << "inequalities " << inequalities_.size() << "\n";
    for (const auto& row : inequalities_) write_row(row, "<=");
    return out.str();
}

}  // namespace lprx
