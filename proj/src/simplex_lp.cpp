#include "avc/simplex_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "avc/errors.hpp"

namespace avc {

namespace {

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

    double& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
    double& rhs(std::size_t i) { return at(i, n_); }
    double& cost(std::size_t j) { return at(m_, j); }  // reduced costs live in the last row

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t r, std::size_t c) {
        const double p = at(r, c);
        for (std::size_t j = 0; j <= n_; ++j) at(r, j) /= p;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            const double f = at(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
        }
        basis_[r] = c;
    }

    void drop_row(std::size_t r) {
        std::vector<double> next;
        next.reserve(m_ * (n_ + 1));
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            for (std::size_t j = 0; j <= n_; ++j) next.push_back(at(i, j));
        }
        t_ = std::move(next);
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --m_;
    }

    // Loads `c` as the objective row and prices out the basic columns.
    void set_objective(const std::vector<double>& c) {
        for (std::size_t j = 0; j <= n_; ++j) cost(j) = j < c.size() ? c[j] : 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            const double f = cost(basis_[i]);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n_; ++j) cost(j) -= f * at(i, j);
        }
    }

private:
    std::size_t m_, n_;
    std::vector<double> t_;
    std::vector<std::size_t> basis_;
};

enum class PhaseOutcome { Optimal, Unbounded, PivotLimit };

// Bland's rule: lowest-index improving column, lowest-index basic variable among ratio ties.
PhaseOutcome run_phase(Tableau& tab, std::size_t usable_cols, const LpOptions& opt, int& pivots) {
    while (true) {
        std::size_t enter = usable_cols;
        for (std::size_t j = 0; j < usable_cols; ++j)
            if (tab.cost(j) < -opt.pivot_tol) {
                enter = j;
                break;
            }
        if (enter == usable_cols) return PhaseOutcome::Optimal;

        std::size_t leave = tab.rows();
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < tab.rows(); ++i) {
            const double a = tab.at(i, enter);
            if (a <= opt.pivot_tol) continue;
            const double ratio = tab.rhs(i) / a;
            if (ratio < best - 1e-14 ||
                (std::abs(ratio - best) <= 1e-14 && leave < tab.rows() && tab.basis()[i] < tab.basis()[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == tab.rows()) return PhaseOutcome::Unbounded;
        tab.pivot(leave, enter);
        if (++pivots > opt.max_pivots) return PhaseOutcome::PivotLimit;
    }
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const LpOptions& opt) {
    const std::size_t nv = lp.num_vars();
    const std::size_t m = lp.rows.size();
    std::size_t n_slack = 0;
    for (const auto& row : lp.rows) {
        if (row.coeffs.size() != nv) throw DimensionMismatch("solve_lp: row width differs from objective");
        if (row.relation != Relation::Equal) ++n_slack;
    }
    // Columns: structural | slack/surplus | artificial.
    const std::size_t first_art = nv + n_slack;
    const std::size_t cols = first_art + m;
    Tableau tab(m, cols);
    std::size_t slack = nv;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = lp.rows[i];
        for (std::size_t j = 0; j < nv; ++j) tab.at(i, j) = row.coeffs[j];
        tab.rhs(i) = row.rhs;
        if (row.relation == Relation::LessEqual) tab.at(i, slack++) = 1.0;
        if (row.relation == Relation::GreaterEqual) tab.at(i, slack++) = -1.0;
        if (tab.rhs(i) < 0.0)
            for (std::size_t j = 0; j <= cols; ++j) tab.at(i, j) = -tab.at(i, j);
        tab.at(i, first_art + i) = 1.0;
        tab.basis()[i] = first_art + i;
    }

    LpResult result;
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t i = 0; i < m; ++i) phase1[first_art + i] = 1.0;
    tab.set_objective(phase1);
    if (run_phase(tab, cols, opt, result.pivots) == PhaseOutcome::PivotLimit)
        throw SolverDidNotConverge("solve_lp: pivot limit in phase 1", 0.0);
    if (-tab.rhs(m) > opt.feasibility_tol) {
        result.status = LpStatus::Infeasible;
        return result;
    }

    // Drive remaining artificials out of the basis; rows where that is impossible are redundant.
    for (std::size_t i = 0; i < tab.rows();) {
        if (tab.basis()[i] < first_art) {
            ++i;
            continue;
        }
        std::size_t c = first_art;
        double best = opt.pivot_tol;
        for (std::size_t j = 0; j < first_art; ++j)
            if (std::abs(tab.at(i, j)) > best) {
                best = std::abs(tab.at(i, j));
                c = j;
            }
        if (c < first_art) {
            tab.pivot(i, c);
            ++i;
        } else {
            tab.drop_row(i);
        }
    }

    std::vector<double> phase2(lp.objective);
    phase2.resize(cols, 0.0);
    tab.set_objective(phase2);
    const auto outcome = run_phase(tab, first_art, opt, result.pivots);
    if (outcome == PhaseOutcome::PivotLimit) throw SolverDidNotConverge("solve_lp: pivot limit in phase 2", 0.0);
    if (outcome == PhaseOutcome::Unbounded) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    result.status = LpStatus::Optimal;
    result.x.assign(nv, 0.0);
    for (std::size_t i = 0; i < tab.rows(); ++i)
        if (tab.basis()[i] < nv) result.x[tab.basis()[i]] = std::max(0.0, tab.rhs(i));
    result.objective = 0.0;
    for (std::size_t j = 0; j < nv; ++j) result.objective += lp.objective[j] * result.x[j];
    return result;
}

}  // namespace avc
