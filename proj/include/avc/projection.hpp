#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace avc {

/// Euclidean projection of v onto {x >= 0, sum x = total} (sort-based).
void project_simplex(std::span<double> v, double total = 1.0);

/// Projection onto a stack of row simplices with one weighted linear budget:
/// rows of x (rows x cols, row-major) are pmfs and sum_r row_weight_r <cost, x_r> <= budget.
/// Requires min cost == 0 so the set is nonempty for budget >= 0.
void project_rows_with_budget(std::span<double> x, std::size_t rows, std::size_t cols,
                              std::span<const double> row_weight, std::span<const double> cost, double budget);

/// Projection onto {x >= 0, sum_i weight_i x_i <= budget}.
void project_box_budget(std::span<double> x, std::span<const double> weight, double budget);

/// Half-space {x : <a, x> >= b}.
struct HalfSpace {
    std::vector<double> a;
    double b = 0.0;
};

void project_halfspace(std::span<double> x, const HalfSpace& h);

/// Dykstra's alternating projections onto base ∩ half-spaces. `base` projects in place.
template <typename BaseProjector>
void dykstra(std::span<double> x, BaseProjector&& base, const std::vector<HalfSpace>& cuts,
             int max_cycles = 20000, double tol = 1e-13) {
    const std::size_t n = x.size();
    const std::size_t sets = cuts.size() + 1;
    std::vector<std::vector<double>> corr(sets, std::vector<double>(n, 0.0));
    std::vector<double> y(n), prev(n);
    for (int cycle = 0; cycle < max_cycles; ++cycle) {
        prev.assign(x.begin(), x.end());
        for (std::size_t k = 0; k < sets; ++k) {
            for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + corr[k][i];
            std::vector<double> z = y;
            if (k == 0)
                base(std::span<double>(z));
            else
                project_halfspace(z, cuts[k - 1]);
            for (std::size_t i = 0; i < n; ++i) {
                corr[k][i] = y[i] - z[i];
                x[i] = z[i];
            }
        }
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(x[i] - prev[i]));
        if (change <= tol) break;
    }
}

}  // namespace avc
