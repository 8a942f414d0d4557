#include "unictrl/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace unictrl::lp {
namespace {

constexpr double kPivotTol = 1e-11;

struct Tableau {
    Matrix body;           // rows x (cols + 1), last column is rhs
    std::vector<int> basis;  // basic variable per row
    int rows = 0;
    int cols = 0;

    double rhs(int r) const { return body(r, cols); }
};

// One simplex phase on the given cost vector (length = cols). Only the
// first `scan_cols` columns may enter the basis. Returns the status; on
// Optimal/IterationLimit the tableau holds the final basis.
Status run_phase(Tableau& t, const Vector& cost, int scan_cols, int& iter_budget) {
    const int m = t.rows;

    // reduced costs maintained implicitly: z_j - c_j via basis costs
    while (true) {
        if (iter_budget-- <= 0) return Status::IterationLimit;

        // reduced cost of column j: c_j - sum_i c_basis[i] * body(i, j)
        int entering = -1;
        for (int j = 0; j < scan_cols; ++j) {
            double rc = cost(j);
            for (int i = 0; i < m; ++i) {
                const double cb = cost(t.basis[i]);
                if (cb != 0.0) rc -= cb * t.body(i, j);
            }
            if (rc < -kPivotTol) {
                entering = j;  // Bland: lowest index
                break;
            }
        }
        if (entering < 0) return Status::Optimal;

        // ratio test, Bland tie-break on lowest basis variable index
        int leaving = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            const double a = t.body(i, entering);
            if (a > kPivotTol) {
                const double ratio = t.rhs(i) / a;
                if (ratio < best_ratio - kPivotTol ||
                    (ratio < best_ratio + kPivotTol &&
                     (leaving < 0 || t.basis[i] < t.basis[leaving]))) {
                    best_ratio = ratio;
                    leaving = i;
                }
            }
        }
        if (leaving < 0) return Status::Unbounded;

        // pivot
        const double piv = t.body(leaving, entering);
        t.body.row(leaving) /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leaving) continue;
            const double f = t.body(i, entering);
            if (f != 0.0) t.body.row(i) -= f * t.body.row(leaving);
        }
        t.basis[leaving] = entering;
    }
}

}  // namespace

Result solve(const Matrix& A, const Vector& b, const Vector& c, int max_iters) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    Result res;

    if (m == 0) {
        res.status = Status::Optimal;
        res.x = Vector::Zero(n);
        return res;
    }

    Tableau t;
    t.rows = m;
    t.cols = n + m;  // structural + artificial
    t.body.resize(m, t.cols + 1);
    for (int i = 0; i < m; ++i) {
        const double s = b(i) < 0 ? -1.0 : 1.0;
        t.body.block(i, 0, 1, n) = s * A.row(i);
        t.body.block(i, n, 1, m).setZero();
        t.body(i, n + i) = 1.0;
        t.body(i, t.cols) = s * b(i);
    }
    t.basis.resize(m);
    for (int i = 0; i < m; ++i) t.basis[i] = n + i;

    // phase 1: minimize the sum of artificials
    Vector phase1 = Vector::Zero(t.cols);
    phase1.tail(m).setOnes();
    int budget = max_iters;
    Status st = run_phase(t, phase1, t.cols, budget);
    if (st == Status::IterationLimit) {
        res.status = st;
        return res;
    }
    double p1 = 0.0;
    for (int i = 0; i < m; ++i)
        if (t.basis[i] >= n) p1 += t.rhs(i);
    res.infeasibility = std::max(0.0, p1);

    const double feas_tol = 1e-9 * std::max(1.0, b.lpNorm<Eigen::Infinity>());
    if (res.infeasibility > feas_tol) {
        res.status = Status::Infeasible;
        return res;
    }

    // drive leftover artificials out of the basis when possible
    for (int i = 0; i < m; ++i) {
        if (t.basis[i] < n) continue;
        int piv_col = -1;
        for (int j = 0; j < n; ++j) {
            if (std::abs(t.body(i, j)) > 1e-9) {
                piv_col = j;
                break;
            }
        }
        if (piv_col < 0) continue;  // redundant row; artificial stays at zero
        const double piv = t.body(i, piv_col);
        t.body.row(i) /= piv;
        for (int r = 0; r < m; ++r) {
            if (r == i) continue;
            const double f = t.body(r, piv_col);
            if (f != 0.0) t.body.row(r) -= f * t.body.row(i);
        }
        t.basis[i] = piv_col;
    }

    // phase 2 (skipped when the cost is identically zero); artificials
    // may not re-enter and contribute nothing to the reduced costs
    if (c.size() > 0 && c.lpNorm<Eigen::Infinity>() > 0) {
        Vector phase2 = Vector::Zero(t.cols);
        phase2.head(n) = c;
        st = run_phase(t, phase2, n, budget);
        if (st != Status::Optimal) {
            res.status = st;
            return res;
        }
    }

    res.status = Status::Optimal;
    res.x = Vector::Zero(n);
    for (int i = 0; i < m; ++i)
        if (t.basis[i] < n) res.x(t.basis[i]) = t.rhs(i);
    res.objective = c.size() > 0 ? c.dot(res.x) : 0.0;
    return res;
}

Feasibility nonnegative_solution_exists(const Matrix& A, const Vector& b, double tol,
                                        double scale) {
    const int n = static_cast<int>(A.cols());
    if (scale <= 0) scale = std::max(1.0, b.lpNorm<Eigen::Infinity>());

    if (n == 0) {
        const double r = b.size() == 0 ? 0.0 : b.lpNorm<Eigen::Infinity>();
        return {r <= tol * scale, r / scale};
    }

    // column equilibration: harmless for feasibility, helps the pivots
    Matrix An = A;
    for (int j = 0; j < n; ++j) {
        const double nj = An.col(j).lpNorm<Eigen::Infinity>();
        if (nj > 0) An.col(j) /= nj;
    }

    Result r = solve(An, b, Vector(), 50000);
    if (r.status == Status::IterationLimit)
        throw LpFailure("simplex iteration limit exceeded in feasibility probe");
    Feasibility f;
    f.residual = r.infeasibility / scale;
    // the phase-1 optimum is the distance measure; judge it against the
    // caller's tolerance, not the solver's internal cutoff
    f.feasible = f.residual <= tol;
    return f;
}

Feasibility bounded_below_solution_exists(const Matrix& A, const Vector& b, double lower, double tol) {
    // substitute x = lower + y, y >= 0
    Vector shift = Vector::Constant(A.cols(), lower);
    Vector b2 = b - A * shift;
    return nonnegative_solution_exists(A, b2, tol);
}

}  // namespace unictrl::lp
