#pragma once

#include <cstddef>
#include <vector>

namespace avc {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
    std::vector<double> coeffs;
    Relation relation = Relation::Equal;
    double rhs = 0.0;
};

/// minimize c^T x subject to the rows, x >= 0.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<LinearConstraint> rows;

    std::size_t num_vars() const noexcept { return objective.size(); }
    void add(std::vector<double> coeffs, Relation relation, double rhs) {
        rows.push_back({std::move(coeffs), relation, rhs});
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x;
    double objective = 0.0;
    int pivots = 0;
};

struct LpOptions {
    double feasibility_tol = 1e-9;
    double pivot_tol = 1e-11;
    int max_pivots = 100000;
};

/// Dense two-phase tableau simplex with Bland's anti-cycling rule.
LpResult solve_lp(const LinearProgram& lp, const LpOptions& options = {});

}  // namespace avc
