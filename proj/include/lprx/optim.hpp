#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "lprx/lcs.hpp"

namespace lprx {

// Convex QP with objective x^T Q x + c^T x + constant over the variables of
// a LinearConstraintSystem. Q is stored as a dense symmetric block on the
// (usually small) set of variables that actually carry quadratic cost;
// everything else is linear.
struct QuadraticProgram {
    const LinearConstraintSystem* sys = nullptr;
    std::vector<int> quad_support;    // sorted, unique variable ids
    Eigen::MatrixXd quad_block;       // |support| x |support|, symmetric PSD
    std::vector<double> linear;       // size sys->num_variables()
    double constant = 0.0;
};

enum class SolveStatus { optimal, max_iterations, infeasible };

const char* solve_status_name(SolveStatus status);

struct SolverOptions {
    double eps_abs = 1e-8;          // residual target (inf norm)
    double eps_rel = 0.0;
    int max_iterations = 50000;
    double rho0 = 1.0;              // initial penalty
    double over_relaxation = 1.6;
    int check_interval = 25;
    int rho_update_interval = 200;  // doubles after every update
    double rho_min = 1e-6;
    double rho_max = 1e6;
    std::ostream* trace = nullptr;  // optional per-check residual log
};

struct SolveReport {
    std::vector<double> solution;  // one entry per system variable
    double objective = 0.0;
    SolveStatus status = SolveStatus::max_iterations;
    double primal_residual = 0.0;  // max consensus / equality / inequality violation
    double dual_residual = 0.0;
    double stationarity = 0.0;     // KKT gradient residual at the solution
    int iterations = 0;
};

// Operator-splitting (ADMM) solver over the equality/box structure:
// inequalities get nonnegative slacks, the equality-constrained proximal
// step is solved through a dense Cholesky factor of the Schur complement
// G D^-1 G^T, and boxes are enforced by projection. Over-relaxed iterations,
// penalty rescaled by residual balancing, cold start from zero.
SolveReport solve_qp(const QuadraticProgram& qp, const SolverOptions& options = {});

// LP: minimize cost . x over the system.
SolveReport solve_lp(const std::vector<double>& cost, const LinearConstraintSystem& sys,
                     const SolverOptions& options = {});

// Phase-1 feasibility: minimizes the total absolute equality defect (split
// slacks) subject to the boxes; returns the optimal defect. Values near zero
// certify feasibility of the original system.
double feasibility_defect(const LinearConstraintSystem& sys, const SolverOptions& options = {});

// Dense linear solve A X = B with partial-pivot LU and a one-norm condition
// estimate; throws when the estimate exceeds 1e14.
Eigen::MatrixXd solve_linear_system(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace lprx
