#include "avc/projection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "avc/errors.hpp"

namespace avc {

void project_simplex(std::span<double> v, double total) {
    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0, shift = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        cumulative += u[k];
        const double candidate = (cumulative - total) / static_cast<double>(k + 1);
        if (u[k] - candidate > 0.0) shift = candidate;
    }
    for (double& x : v) x = std::max(0.0, x - shift);
}

namespace {

double weighted_cost(std::span<const double> x, std::size_t rows, std::size_t cols,
                     std::span<const double> row_weight, std::span<const double> cost) {
    double c = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t k = 0; k < cols; ++k) c += row_weight[r] * cost[k] * x[r * cols + k];
    return c;
}

// Finds mu > 0 with spend(mu) = budget for a nonincreasing piecewise-linear spend, leaving
// the projection for that mu applied. Alternates secant and bisection steps; the secant step
// is exact once both brackets share a linear piece.
template <typename Spend>
void solve_multiplier(Spend&& spend, double budget) {
    double lo = 0.0, hi = 1.0;
    double f_lo = spend(lo) - budget, f_hi = spend(hi) - budget;
    while (f_hi > 0.0 && hi < 1e300) {
        lo = hi;
        f_lo = f_hi;
        hi *= 2.0;
        f_hi = spend(hi) - budget;
    }
    const double tol = 1e-15 * std::max(1.0, budget);
    for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++it) {
        double mid = it % 3 == 2 || f_lo == f_hi ? 0.5 * (lo + hi) : lo + f_lo * (hi - lo) / (f_lo - f_hi);
        if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
        const double f_mid = spend(mid) - budget;
        if (std::abs(f_mid) <= tol) return;
        if (f_mid > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    spend(hi);
}

}  // namespace

void project_rows_with_budget(std::span<double> x, std::size_t rows, std::size_t cols,
                              std::span<const double> row_weight, std::span<const double> cost, double budget) {
    if (x.size() != rows * cols || row_weight.size() != rows || cost.size() != cols)
        throw DimensionMismatch("project_rows_with_budget: shape mismatch");
    const std::vector<double> v(x.begin(), x.end());
    // KKT: row r is the simplex projection of v_r - mu w_r cost for the budget multiplier mu.
    auto apply = [&](double mu) {
        for (std::size_t r = 0; r < rows; ++r) {
            auto row = x.subspan(r * cols, cols);
            for (std::size_t k = 0; k < cols; ++k) row[k] = v[r * cols + k] - mu * row_weight[r] * cost[k];
            project_simplex(row);
        }
        return weighted_cost(x, rows, cols, row_weight, cost);
    };
    if (apply(0.0) <= budget) return;
    solve_multiplier(apply, budget);
}

void project_box_budget(std::span<double> x, std::span<const double> weight, double budget) {
    if (x.size() != weight.size()) throw DimensionMismatch("project_box_budget: shape mismatch");
    const std::vector<double> v(x.begin(), x.end());
    auto apply = [&](double mu) {
        double c = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = std::max(0.0, v[i] - mu * weight[i]);
            c += weight[i] * x[i];
        }
        return c;
    };
    if (apply(0.0) <= budget) return;
    solve_multiplier(apply, budget);
}

void project_halfspace(std::span<double> x, const HalfSpace& h) {
    double dot = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dot += h.a[i] * x[i];
        norm2 += h.a[i] * h.a[i];
    }
    if (dot >= h.b || norm2 == 0.0) return;
    const double step = (h.b - dot) / norm2;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += step * h.a[i];
}

}  // namespace avc
