#include "lprx/optim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "lprx/kernels.hpp"

namespace lprx {

const char* solve_status_name(SolveStatus status) {
    switch (status) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::max_iterations: return "max-iterations";
        case SolveStatus::infeasible: return "infeasible";
    }
    return "?";
}

namespace {

struct Csr {
    int num_rows = 0;
    std::vector<int> offsets{0};
    std::vector<int> cols;
    std::vector<double> vals;

    void add_row(const std::vector<LinearTerm>& terms, double extra_col_coef = 0.0,
                 int extra_col = -1) {
        for (const auto& t : terms) {
            cols.push_back(t.var);
            vals.push_back(t.coef);
        }
        if (extra_col >= 0) {
            cols.push_back(extra_col);
            vals.push_back(extra_col_coef);
        }
        offsets.push_back(static_cast<int>(cols.size()));
        ++num_rows;
    }

    // y = A x
    void matvec(const double* x, double* y) const {
        for (int r = 0; r < num_rows; ++r) {
            double acc = 0.0;
            for (int k = offsets[r]; k < offsets[r + 1]; ++k) acc += vals[k] * x[cols[k]];
            y[r] = acc;
        }
    }
    // y += A^T lambda
    void add_matvec_transpose(const double* lambda, double* y) const {
        for (int r = 0; r < num_rows; ++r) {
            const double l = lambda[r];
            if (l == 0.0) continue;
            for (int k = offsets[r]; k < offsets[r + 1]; ++k) y[cols[k]] += vals[k] * l;
        }
    }
};

// Row-major dense Cholesky; the strictly upper triangle is left untouched.
bool dense_cholesky_inplace(std::vector<double>& a, int n) {
    for (int j = 0; j < n; ++j) {
        double* row_j = &a[static_cast<std::size_t>(j) * n];
        const double d = row_j[j] - kernels::dot(row_j, row_j, j);
        if (!(d > 0.0)) return false;
        const double ljj = std::sqrt(d);
        row_j[j] = ljj;
        for (int i = j + 1; i < n; ++i) {
            double* row_i = &a[static_cast<std::size_t>(i) * n];
            row_i[j] = (row_i[j] - kernels::dot(row_i, row_j, j)) / ljj;
        }
    }
    return true;
}

// Solves L L^T x = b given L (row-major) and U = L^T (row-major).
void cholesky_solve(const std::vector<double>& lower, const std::vector<double>& upper, int n,
                    const double* b, double* x, std::vector<double>& scratch) {
    scratch.resize(n);
    for (int i = 0; i < n; ++i) {
        const double* row = &lower[static_cast<std::size_t>(i) * n];
        scratch[i] = (b[i] - kernels::dot(row, scratch.data(), i)) / row[i];
    }
    for (int i = n - 1; i >= 0; --i) {
        const double* row = &upper[static_cast<std::size_t>(i) * n];
        const int tail = n - 1 - i;
        x[i] = (scratch[i] - kernels::dot(row + i + 1, x + i + 1, tail)) / row[i];
    }
}

struct AdmmWorkspace {
    // problem, after slack augmentation and row scaling
    int num_sys_vars = 0;
    int total_vars = 0;
    Csr rows;                       // scaled equality rows (slacked inequalities included)
    std::vector<double> rhs;        // scaled
    std::vector<double> row_scale;  // original row inf-norm
    std::vector<double> lo, hi;
    std::vector<double> cost;       // linear cost, slacks padded with zero

    std::vector<int> quad_support;
    std::vector<int> support_pos;   // var -> index in support, -1 otherwise
    Eigen::MatrixXd quad_block;     // Q (not doubled)

    // rows that touch quadratic-support variables, and their dense support part
    std::vector<int> rows_with_quad;
    Eigen::MatrixXd support_rows_dense;  // |rows_with_quad| x nq

    // rho-independent sparse part of the Schur complement (full dense storage)
    std::vector<double> schur_rest;

    // factorization state for the current rho
    double rho = 1.0;
    Eigen::LLT<Eigen::MatrixXd> quad_llt;  // of 2Q + rho I
    std::vector<double> schur_lower, schur_upper;

    int num_rows() const { return rows.num_rows; }
};

void build_workspace(AdmmWorkspace& w, const QuadraticProgram& qp) {
    const LinearConstraintSystem& sys = *qp.sys;
    const int n = sys.num_variables();
    const int num_ineq = static_cast<int>(sys.inequalities().size());
    w.num_sys_vars = n;
    w.total_vars = n + num_ineq;

    w.lo.resize(w.total_vars);
    w.hi.resize(w.total_vars);
    for (int i = 0; i < n; ++i) {
        w.lo[i] = sys.variable(i).lo;
        w.hi[i] = sys.variable(i).hi;
    }
    for (int i = n; i < w.total_vars; ++i) {
        w.lo[i] = 0.0;  // inequality slack
        w.hi[i] = kInf;
    }

    w.cost.assign(w.total_vars, 0.0);
    if (!qp.linear.empty()) {
        if (static_cast<int>(qp.linear.size()) != n) {
            throw std::invalid_argument("QuadraticProgram: linear cost dimension mismatch");
        }
        std::copy(qp.linear.begin(), qp.linear.end(), w.cost.begin());
    }

    auto scaled_add_row = [&](const std::vector<LinearTerm>& terms, double rhs, int slack) {
        double scale = slack >= 0 ? 1.0 : 0.0;
        for (const auto& t : terms) scale = std::max(scale, std::fabs(t.coef));
        w.row_scale.push_back(scale);
        std::vector<LinearTerm> scaled = terms;
        for (auto& t : scaled) t.coef /= scale;
        w.rows.add_row(scaled, 1.0 / scale, slack);
        w.rhs.push_back(rhs / scale);
    };
    for (const auto& row : sys.equalities()) scaled_add_row(row.terms, row.rhs, -1);
    for (int i = 0; i < num_ineq; ++i) {
        scaled_add_row(sys.inequalities()[i].terms, sys.inequalities()[i].rhs, n + i);
    }

    w.quad_support = qp.quad_support;
    const int nq = static_cast<int>(w.quad_support.size());
    if (nq > 0) {
        if (qp.quad_block.rows() != nq || qp.quad_block.cols() != nq) {
            throw std::invalid_argument("QuadraticProgram: quad block dimension mismatch");
        }
        if ((qp.quad_block - qp.quad_block.transpose()).cwiseAbs().maxCoeff() >
            1e-10 * std::max(1.0, qp.quad_block.cwiseAbs().maxCoeff())) {
            throw std::invalid_argument("QuadraticProgram: cost matrix is not symmetric");
        }
        Eigen::LLT<Eigen::MatrixXd> psd_probe(
            qp.quad_block + 1e-9 * std::max(1.0, qp.quad_block.diagonal().maxCoeff()) *
                                Eigen::MatrixXd::Identity(nq, nq));
        if (psd_probe.info() != Eigen::Success) {
            throw std::invalid_argument("QuadraticProgram: cost matrix is not PSD");
        }
    }
    w.quad_block = qp.quad_block;
    w.support_pos.assign(w.total_vars, -1);
    for (int i = 0; i < nq; ++i) {
        const int var = w.quad_support[i];
        if (var < 0 || var >= n) throw std::out_of_range("QuadraticProgram: bad support var");
        if (i > 0 && w.quad_support[i] <= w.quad_support[i - 1]) {
            throw std::invalid_argument("QuadraticProgram: support must be sorted and unique");
        }
        w.support_pos[var] = i;
    }

    // split each row into its dense quadratic-support part and the rest
    const int num_rows = w.num_rows();
    std::vector<std::vector<std::pair<int, double>>> rest_cols(w.total_vars);
    for (int r = 0; r < num_rows; ++r) {
        bool touches = false;
        for (int k = w.rows.offsets[r]; k < w.rows.offsets[r + 1]; ++k) {
            if (w.support_pos[w.rows.cols[k]] >= 0) {
                touches = true;
            } else {
                rest_cols[w.rows.cols[k]].push_back({r, w.rows.vals[k]});
            }
        }
        if (touches) w.rows_with_quad.push_back(r);
    }
    w.support_rows_dense = Eigen::MatrixXd::Zero(static_cast<int>(w.rows_with_quad.size()), nq);
    for (int i = 0; i < static_cast<int>(w.rows_with_quad.size()); ++i) {
        const int r = w.rows_with_quad[i];
        for (int k = w.rows.offsets[r]; k < w.rows.offsets[r + 1]; ++k) {
            const int pos = w.support_pos[w.rows.cols[k]];
            if (pos >= 0) w.support_rows_dense(i, pos) = w.rows.vals[k];
        }
    }

    w.schur_rest.assign(static_cast<std::size_t>(num_rows) * num_rows, 0.0);
    for (int c = 0; c < w.total_vars; ++c) {
        const auto& entries = rest_cols[c];
        for (std::size_t a = 0; a < entries.size(); ++a) {
            for (std::size_t b = 0; b < entries.size(); ++b) {
                w.schur_rest[static_cast<std::size_t>(entries[a].first) * num_rows +
                             entries[b].first] += entries[a].second * entries[b].second;
            }
        }
    }
}

void factorize(AdmmWorkspace& w, double rho) {
    w.rho = rho;
    const int nq = static_cast<int>(w.quad_support.size());
    if (nq > 0) {
        Eigen::MatrixXd dq = 2.0 * w.quad_block;
        dq.diagonal().array() += rho;
        w.quad_llt.compute(dq);
        if (w.quad_llt.info() != Eigen::Success) {
            throw std::runtime_error("admm: quadratic block factorization failed");
        }
    }
    const int num_rows = w.num_rows();
    if (num_rows == 0) return;

    std::vector<double> schur(w.schur_rest);
    kernels::scal(schur.data(), 1.0 / rho, schur.size());
    if (nq > 0 && w.support_rows_dense.rows() > 0) {
        const Eigen::MatrixXd solved = w.quad_llt.solve(w.support_rows_dense.transpose());
        const Eigen::MatrixXd dense_part = w.support_rows_dense * solved;
        for (int i = 0; i < dense_part.rows(); ++i) {
            for (int j = 0; j < dense_part.cols(); ++j) {
                schur[static_cast<std::size_t>(w.rows_with_quad[i]) * num_rows +
                      w.rows_with_quad[j]] += dense_part(i, j);
            }
        }
    }

    double max_diag = 0.0;
    for (int i = 0; i < num_rows; ++i) {
        max_diag = std::max(max_diag, schur[static_cast<std::size_t>(i) * num_rows + i]);
    }
    double jitter = 0.0;
    for (int attempt = 0; attempt < 4; ++attempt) {
        w.schur_lower = schur;
        if (jitter > 0.0) {
            for (int i = 0; i < num_rows; ++i) {
                w.schur_lower[static_cast<std::size_t>(i) * num_rows + i] += jitter;
            }
        }
        if (dense_cholesky_inplace(w.schur_lower, num_rows)) {
            w.schur_upper.assign(static_cast<std::size_t>(num_rows) * num_rows, 0.0);
            for (int i = 0; i < num_rows; ++i) {
                for (int j = 0; j <= i; ++j) {
                    w.schur_upper[static_cast<std::size_t>(j) * num_rows + i] =
                        w.schur_lower[static_cast<std::size_t>(i) * num_rows + j];
                }
            }
            return;
        }
        jitter = jitter == 0.0 ? 1e-12 * std::max(1.0, max_diag) : jitter * 1e3;
    }
    throw std::runtime_error("admm: Schur complement factorization failed");
}

// t = D^-1 r with D = 2Q + rho I on the support block, rho I elsewhere.
// Safe for t == r: the support block is gathered before the scale.
void apply_dinv(const AdmmWorkspace& w, const double* r, double* t,
                Eigen::VectorXd& scratch) {
    const int nq = static_cast<int>(w.quad_support.size());
    if (nq > 0) {
        scratch.resize(nq);
        for (int i = 0; i < nq; ++i) scratch[i] = r[w.quad_support[i]];
    }
    const double inv_rho = 1.0 / w.rho;
    for (int i = 0; i < w.total_vars; ++i) t[i] = r[i] * inv_rho;
    if (nq == 0) return;
    w.quad_llt.solveInPlace(scratch);
    for (int i = 0; i < nq; ++i) t[w.quad_support[i]] = scratch[i];
}

double objective_value(const QuadraticProgram& qp, const std::vector<double>& x) {
    double obj = qp.constant;
    const int n = qp.sys->num_variables();
    if (!qp.linear.empty()) obj += kernels::dot(qp.linear.data(), x.data(), n);
    const int nq = static_cast<int>(qp.quad_support.size());
    if (nq > 0) {
        Eigen::VectorXd xs(nq);
        for (int i = 0; i < nq; ++i) xs[i] = x[qp.quad_support[i]];
        obj += xs.dot(qp.quad_block * xs);
    }
    return obj;
}

}  // namespace

SolveReport solve_qp(const QuadraticProgram& qp, const SolverOptions& options) {
    if (qp.sys == nullptr) throw std::invalid_argument("solve_qp: missing constraint system");
    if (qp.sys->num_variables() == 0) throw std::invalid_argument("solve_qp: empty system");

    AdmmWorkspace w;
    build_workspace(w, qp);
    const int total = w.total_vars;
    const int num_rows = w.num_rows();

    double rho = options.rho0;
    factorize(w, rho);

    std::vector<double> x(total, 0.0), z(total, 0.0), u(total, 0.0);
    std::vector<double> xr(total, 0.0), z_prev(total, 0.0);
    std::vector<double> r_vec(total, 0.0), t_vec(total, 0.0), w_vec(total, 0.0);
    std::vector<double> row_val(num_rows, 0.0), lambda(num_rows, 0.0);
    std::vector<double> tri_scratch;
    Eigen::VectorXd dq_scratch;

    // clamp the cold start into the boxes so unconstrained coordinates start at 0
    kernels::clamp_sum(z.data(), z.data(), u.data(), w.lo.data(), w.hi.data(), total);

    SolveReport report;
    const double omega = options.over_relaxation;
    int next_rho_check = options.rho_update_interval;
    int rho_interval = options.rho_update_interval;

    double best_prim = kInf;
    double window_best_prim = kInf;
    double prev_window_best = kInf;
    int window_start = 0;
    int stalled_windows = 0;
    int consecutive_eq_bad = 0;
    const int stall_window = std::max(4000, 40 * options.check_interval);
    const double stall_threshold = std::max(1e-4, 1e3 * options.eps_abs);

    int iter = 0;
    for (iter = 1; iter <= options.max_iterations; ++iter) {
        // x-update: equality-constrained proximal step
        for (int i = 0; i < total; ++i) r_vec[i] = rho * (z[i] - u[i]) - w.cost[i];
        apply_dinv(w, r_vec.data(), t_vec.data(), dq_scratch);
        if (num_rows > 0) {
            w.rows.matvec(t_vec.data(), row_val.data());
            for (int r = 0; r < num_rows; ++r) row_val[r] -= w.rhs[r];
            cholesky_solve(w.schur_lower, w.schur_upper, num_rows, row_val.data(), lambda.data(),
                           tri_scratch);
            std::fill(w_vec.begin(), w_vec.end(), 0.0);
            w.rows.add_matvec_transpose(lambda.data(), w_vec.data());
            apply_dinv(w, w_vec.data(), w_vec.data(), dq_scratch);
            for (int i = 0; i < total; ++i) x[i] = t_vec[i] - w_vec[i];
        } else {
            x = t_vec;
        }

        // relaxation, projection, dual ascent
        kernels::combine(xr.data(), omega, x.data(), 1.0 - omega, z.data(), total);
        std::swap(z, z_prev);
        kernels::clamp_sum(z.data(), xr.data(), u.data(), w.lo.data(), w.hi.data(), total);
        kernels::dual_update(u.data(), xr.data(), z.data(), total);

        if (iter % options.check_interval != 0 && iter != options.max_iterations) continue;

        const double consensus = kernels::max_abs_diff(x.data(), z.data(), total);
        double eq_resid = 0.0;
        if (num_rows > 0) {
            w.rows.matvec(x.data(), row_val.data());
            for (int r = 0; r < num_rows; ++r) {
                eq_resid = std::max(eq_resid, std::fabs(row_val[r] - w.rhs[r]) * w.row_scale[r]);
            }
        }
        const double prim = std::max(consensus, eq_resid);
        const double dual = rho * kernels::max_abs_diff(z.data(), z_prev.data(), total);
        const double scale = std::max(1.0, kernels::max_abs(x.data(), total));
        const double eps = options.eps_abs + options.eps_rel * scale;

        if (options.trace != nullptr) {
            *options.trace << "iter " << iter << " rho " << rho << " prim " << prim << " dual "
                           << dual << " obj " << objective_value(qp, x) << "\n";
        }

        best_prim = std::min(best_prim, prim);
        window_best_prim = std::min(window_best_prim, prim);

        if (prim <= eps && dual <= eps) {
            report.status = SolveStatus::optimal;
            report.primal_residual = prim;
            report.dual_residual = dual;
            break;
        }

        // stalled equality residual means inconsistent equality rows
        if (eq_resid > std::max(1e3 * options.eps_abs, 1e-7)) {
            if (++consecutive_eq_bad >= 3 && iter > 20 * options.check_interval) {
                report.status = SolveStatus::infeasible;
                report.primal_residual = prim;
                report.dual_residual = dual;
                break;
            }
        } else {
            consecutive_eq_bad = 0;
        }
        // a consensus gap that stops shrinking means the equality set and the
        // boxes do not intersect; demand two stalled windows before declaring
        if (iter - window_start >= stall_window) {
            const bool no_progress = window_best_prim > 0.95 * prev_window_best;
            if (no_progress && best_prim > stall_threshold) {
                if (++stalled_windows >= 2) {
                    report.status = SolveStatus::infeasible;
                    report.primal_residual = prim;
                    report.dual_residual = dual;
                    break;
                }
            } else {
                stalled_windows = 0;
            }
            prev_window_best = window_best_prim;
            window_best_prim = kInf;
            window_start = iter;
        }

        if (iter >= next_rho_check && iter < options.max_iterations) {
            const double ratio = prim / std::max(dual, 1e-300);
            double factor = 1.0;
            if (ratio > 10.0) factor = std::min(std::sqrt(ratio), 10.0);
            else if (ratio < 0.1) factor = std::max(std::sqrt(ratio), 0.1);
            if (factor != 1.0) {
                const double new_rho = std::clamp(rho * factor, options.rho_min, options.rho_max);
                if (new_rho != rho) {
                    // scaled duals carry 1/rho units
                    kernels::scal(u.data(), rho / new_rho, total);
                    rho = new_rho;
                    factorize(w, rho);
                }
            }
            rho_interval *= 2;
            next_rho_check = iter + rho_interval;
        }

        if (iter == options.max_iterations) {
            report.primal_residual = prim;
            report.dual_residual = dual;
        }
    }
    report.iterations = std::min(iter, options.max_iterations);

    // KKT stationarity at (x, lambda, rho u)
    std::vector<double> grad(w.cost);
    const int nq = static_cast<int>(w.quad_support.size());
    if (nq > 0) {
        Eigen::VectorXd xs(nq);
        for (int i = 0; i < nq; ++i) xs[i] = x[qp.quad_support[i]];
        const Eigen::VectorXd gq = 2.0 * (w.quad_block * xs);
        for (int i = 0; i < nq; ++i) grad[qp.quad_support[i]] += gq[i];
    }
    if (num_rows > 0) w.rows.add_matvec_transpose(lambda.data(), grad.data());
    kernels::axpy(grad.data(), rho, u.data(), total);
    report.stationarity = kernels::max_abs(grad.data(), total);

    report.solution.assign(x.begin(), x.begin() + w.num_sys_vars);
    report.objective = objective_value(qp, report.solution);
    return report;
}

SolveReport solve_lp(const std::vector<double>& cost, const LinearConstraintSystem& sys,
                     const SolverOptions& options) {
    if (static_cast<int>(cost.size()) != sys.num_variables()) {
        throw std::invalid_argument("solve_lp: cost dimension mismatch");
    }
    QuadraticProgram qp;
    qp.sys = &sys;
    qp.linear = cost;
    return solve_qp(qp, options);
}

double feasibility_defect(const LinearConstraintSystem& sys, const SolverOptions& options) {
    LinearConstraintSystem aug;
    for (const auto& v : sys.variables()) aug.add_variable(v.name, v.role, v.lo, v.hi);

    std::vector<double> cost(sys.num_variables(), 0.0);
    int row_id = 0;
    for (const auto& row : sys.equalities()) {
        const int dp = aug.add_variable("phase1/p/" + std::to_string(row_id), VarRole::slack);
        const int dm = aug.add_variable("phase1/m/" + std::to_string(row_id), VarRole::slack);
        std::vector<LinearTerm> terms = row.terms;
        terms.push_back({dp, 1.0});
        terms.push_back({dm, -1.0});
        aug.add_equality(terms, row.rhs);
        cost.push_back(1.0);
        cost.push_back(1.0);
        ++row_id;
    }
    for (const auto& row : sys.inequalities()) {
        const int dt = aug.add_variable("phase1/t/" + std::to_string(row_id), VarRole::slack);
        std::vector<LinearTerm> terms = row.terms;
        terms.push_back({dt, -1.0});
        aug.add_inequality(terms, row.rhs);
        cost.push_back(1.0);
        ++row_id;
    }
    const SolveReport report = solve_lp(cost, aug, options);
    return report.objective;
}

Eigen::MatrixXd solve_linear_system(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve_linear_system: A must be square");
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_linear_system: dimension mismatch");

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const Eigen::MatrixXd inv = lu.inverse();
    const double cond =
        a.cwiseAbs().colwise().sum().maxCoeff() * inv.cwiseAbs().colwise().sum().maxCoeff();
    if (!std::isfinite(cond) || cond > 1e14) {
        throw std::runtime_error("solve_linear_system: matrix singular within tolerance, "
                                 "1-norm condition estimate " +
                                 std::to_string(cond));
    }
    Eigen::MatrixXd x = lu.solve(b);
    x += lu.solve(b - a * x);  // one refinement step
    return x;
}

}  // namespace lprx
