#pragma once

#include "unictrl/types.hpp"

namespace unictrl::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Result {
    Status status = Status::Infeasible;
    double objective = 0.0;
    Vector x;
    /// Phase-1 optimum: how far the constraints are from being satisfiable
    /// by some x >= 0 (zero when feasible).
    double infeasibility = 0.0;
};

/// Solves min c'x subject to A x = b, x >= 0 with a dense two-phase
/// tableau simplex (Bland's rule). Intended for the small feasibility
/// problems of this project, not as a general-purpose solver.
Result solve(const Matrix& A, const Vector& b, const Vector& c, int max_iters = 50000);

struct Feasibility {
    bool feasible = false;
    /// Phase-1 optimum divided by the reference scale; distance-like margin.
    double residual = 0.0;
};

/// Does there exist x >= 0 with A x = b, up to tol * scale? The default
/// scale (scale <= 0) is max(1, |b|_inf). Throws LpFailure if the solver
/// hits its iteration limit.
Feasibility nonnegative_solution_exists(const Matrix& A, const Vector& b, double tol,
                                        double scale = -1.0);

/// Does there exist x >= lower (entrywise) with A x = b?
Feasibility bounded_below_solution_exists(const Matrix& A, const Vector& b, double lower, double tol);

}  // namespace unictrl::lp
