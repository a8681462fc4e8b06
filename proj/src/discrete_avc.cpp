#include "avc/discrete_avc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "avc/errors.hpp"
#include "avc/projection.hpp"
#include "avc/simplex_lp.hpp"
#include "minmax_solver.hpp"

namespace avc {

namespace {

constexpr double kZeroOneTol = 1e-9;
constexpr double kDecisionMargin = 1e-6;

// Equalities sum_s W(y|x1,s) J(s|x2) - W(y|x2,s) J(s|x1) = 0 and sum_s J(s|x) = 1.
LinearProgram symmetrization_lp(const StateChannel& w) {
    LinearProgram lp;
    const std::size_t n = w.nx * w.ns;
    lp.objective.assign(n, 0.0);
    for (std::size_t x1 = 0; x1 < w.nx; ++x1)
        for (std::size_t x2 = x1 + 1; x2 < w.nx; ++x2)
            for (std::size_t y = 0; y < w.ny; ++y) {
                std::vector<double> row(n, 0.0);
                for (std::size_t s = 0; s < w.ns; ++s) {
                    row[x2 * w.ns + s] += w(x1, s, y);
                    row[x1 * w.ns + s] -= w(x2, s, y);
                }
                lp.add(std::move(row), Relation::Equal, 0.0);
            }
    for (std::size_t x = 0; x < w.nx; ++x) {
        std::vector<double> row(n, 0.0);
        for (std::size_t s = 0; s < w.ns; ++s) row[x * w.ns + s] = 1.0;
        lp.add(std::move(row), Relation::Equal, 1.0);
    }
    return lp;
}

SymmetrizingKernel make_kernel(const StateChannel& w, std::vector<double> j) {
    SymmetrizingKernel k;
    k.nx = w.nx;
    k.ns = w.ns;
    // Clean simplex round-off so every row is an exact pmf.
    for (std::size_t x = 0; x < w.nx; ++x) {
        double sum = 0.0;
        for (std::size_t s = 0; s < w.ns; ++s) sum += (j[x * w.ns + s] = std::max(0.0, j[x * w.ns + s]));
        for (std::size_t s = 0; s < w.ns; ++s) j[x * w.ns + s] /= sum;
    }
    k.j = std::move(j);
    k.residual = symmetrization_residual(w, k.j);
    k.zero_one = std::all_of(k.j.begin(), k.j.end(), [](double v) {
        return std::abs(v) <= kZeroOneTol || std::abs(v - 1.0) <= kZeroOneTol;
    });
    return k;
}

std::vector<double> kernel_costs(const SymmetrizingKernel& k, std::span<const double> state_cost) {
    std::vector<double> c(k.nx, 0.0);
    for (std::size_t x = 0; x < k.nx; ++x)
        for (std::size_t s = 0; s < k.ns; ++s) c[x] += k(x, s) * state_cost[s];
    return c;
}

double max_cost(std::span<const double> cost) { return *std::max_element(cost.begin(), cost.end()); }

DiscreteAVCSpec single_parameter(const DiscreteAVCSpec& spec, std::size_t t, double omega, double lambda) {
    DiscreteAVCSpec out = spec;
    out.nt = 1;
    out.param_type = {1.0};
    const std::size_t block = spec.nx * spec.ns * spec.ny;
    out.kernel.assign(spec.kernel.begin() + static_cast<std::ptrdiff_t>(t * block),
                      spec.kernel.begin() + static_cast<std::ptrdiff_t>((t + 1) * block));
    out.constraints = {omega, lambda};
    return out;
}

CapacityResult finish(const detail::SaddleOutcome& s, double gap_tolerance) {
    CapacityResult r;
    r.upper = s.upper;
    r.lower = s.lower;
    r.gap = std::max(0.0, s.upper - s.lower);
    r.value = std::max(0.0, 0.5 * (s.upper + s.lower));
    r.q = s.q;
    r.p = s.p;
    r.iterations = s.iterations;
    if (!(r.gap <= gap_tolerance))
        throw SolverDidNotConverge("min-max bounds did not meet", r.gap);
    return r;
}

// Compositions of `steps` into `parts` nonnegative integers.
std::vector<std::vector<int>> compositions(int steps, std::size_t parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(parts, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i + 1 == parts) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (int k = left; k >= 0; --k) {
            cur[i] = k;
            self(self, i + 1, left - k);
        }
    };
    rec(rec, 0, steps);
    return out;
}

// I(X;Y) in bits for one slice with input pmf p and state pmf q.
double slice_info(const StateChannel& w, std::span<const double> p, std::span<const double> q,
                  std::vector<double>& v, std::vector<double>& py) {
    v.assign(w.nx * w.ny, 0.0);
    py.assign(w.ny, 0.0);
    for (std::size_t x = 0; x < w.nx; ++x) {
        for (std::size_t s = 0; s < w.ns; ++s)
            if (q[s] != 0.0)
                for (std::size_t y = 0; y < w.ny; ++y) v[x * w.ny + y] += q[s] * w(x, s, y);
        for (std::size_t y = 0; y < w.ny; ++y) py[y] += p[x] * v[x * w.ny + y];
    }
    double info = 0.0;
    for (std::size_t x = 0; x < w.nx; ++x) {
        if (p[x] == 0.0) continue;
        for (std::size_t y = 0; y < w.ny; ++y) {
            const double vy = v[x * w.ny + y];
            if (vy > 0.0) info += p[x] * vy * std::log2(vy / py[y]);
        }
    }
    return std::max(0.0, info);
}

// Largest change of the table along one grid move in the chosen coordinate.
double adjacent_variation(const std::vector<double>& table, const std::vector<std::vector<int>>& grid_a,
                          std::size_t other, bool along_rows) {
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < grid_a.size(); ++i) index[grid_a[i]] = i;
    double worst = 0.0;
    const std::size_t k = grid_a.front().size();
    for (std::size_t i = 0; i < grid_a.size(); ++i)
        for (std::size_t from = 0; from < k; ++from) {
            if (grid_a[i][from] == 0) continue;
            for (std::size_t to = 0; to < k; ++to) {
                if (to == from) continue;
                auto moved = grid_a[i];
                --moved[from];
                ++moved[to];
                const std::size_t j = index.at(moved);
                for (std::size_t o = 0; o < other; ++o) {
                    const double a = along_rows ? table[i * other + o] : table[o * grid_a.size() + i];
                    const double b = along_rows ? table[j * other + o] : table[o * grid_a.size() + j];
                    worst = std::max(worst, std::abs(a - b));
                }
            }
        }
    return worst;
}

std::vector<std::size_t> active_parameters(const DiscreteAVCSpec& spec) {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < spec.nt; ++t)
        if (spec.param_type[t] > 0.0) out.push_back(t);
    return out;
}

// Golden-section search for the extremum of a unimodal function on [lo, hi].
template <typename F>
std::pair<double, double> golden(F&& f, double lo, double hi, bool maximize, double tol, int& evaluations) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    auto better = [&](double a, double b) { return maximize ? a > b : a < b; };
    if (hi - lo <= tol) {
        ++evaluations;
        const double mid = 0.5 * (lo + hi);
        return {mid, f(mid)};
    }
    double a = lo, b = hi;
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    evaluations += 2;
    while (b - a > tol) {
        if (better(f1, f2)) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
        ++evaluations;
    }
    // Endpoints matter when the optimum sits on the boundary of the budget segment.
    double best_x = better(f1, f2) ? x1 : x2;
    double best_f = better(f1, f2) ? f1 : f2;
    for (double e : {lo, hi}) {
        const double fe = f(e);
        ++evaluations;
        if (better(fe, best_f)) {
            best_x = e;
            best_f = fe;
        }
    }
    return {best_x, best_f};
}

// Budget split b_t >= 0, b_t <= cap, sum_t P_t b_t = total, optimized by pairwise transfers.
template <typename F>
std::pair<std::vector<double>, double> allocate(F&& objective, const std::vector<double>& weight, double total,
                                                double cap, bool maximize, int& evaluations) {
    const std::size_t n = weight.size();
    const double wsum = std::accumulate(weight.begin(), weight.end(), 0.0);
    std::vector<double> b(n, std::min(cap, total / wsum));
    double best = objective(b);
    ++evaluations;
    if (n == 1) return {b, best};
    const int rounds = n == 2 ? 1 : 6;
    for (int round = 0; round < rounds; ++round)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                // Move mass between i and j keeping w_i b_i + w_j b_j fixed.
                const double pool = weight[i] * b[i] + weight[j] * b[j];
                const double lo = std::max(0.0, (pool - weight[j] * cap) / weight[i]);
                const double hi = std::min(cap, pool / weight[i]);
                auto along = [&](double bi) {
                    auto trial = b;
                    trial[i] = bi;
                    trial[j] = std::clamp((pool - weight[i] * bi) / weight[j], 0.0, cap);
                    return objective(trial);
                };
                auto [bi, val] = golden(along, lo, std::max(lo, hi), maximize, 1e-5 * std::max(1.0, cap), evaluations);
                if (maximize ? val >= best : val <= best) {
                    b[i] = bi;
                    b[j] = std::clamp((pool - weight[i] * bi) / weight[j], 0.0, cap);
                    best = val;
                }
            }
    return {b, best};
}

}  // namespace

// ---------------------------------------------------------------------------
// Symmetrizability
// ---------------------------------------------------------------------------

double symmetrization_residual(const StateChannel& w, std::span<const double> kernel) {
    if (kernel.size() != w.nx * w.ns) throw DimensionMismatch("symmetrizing kernel must be |X| x |S|");
    double worst = 0.0;
    for (std::size_t x1 = 0; x1 < w.nx; ++x1)
        for (std::size_t x2 = x1 + 1; x2 < w.nx; ++x2)
            for (std::size_t y = 0; y < w.ny; ++y) {
                double d = 0.0;
                for (std::size_t s = 0; s < w.ns; ++s)
                    d += w(x1, s, y) * kernel[x2 * w.ns + s] - w(x2, s, y) * kernel[x1 * w.ns + s];
                worst = std::max(worst, std::abs(d));
            }
    return worst;
}

std::optional<SymmetrizingKernel> find_symmetrizer(const StateChannel& w) {
    const auto res = solve_lp(symmetrization_lp(w));
    if (res.status != LpStatus::Optimal) return std::nullopt;
    return make_kernel(w, res.x);
}

SymmetrizationCost min_symm_cost(const StateChannel& w, std::span<const double> p, std::span<const double> state_cost) {
    if (p.size() != w.nx || state_cost.size() != w.ns)
        throw DimensionMismatch("min_symm_cost: p must have |X| entries and l must have |S| entries");
    auto lp = symmetrization_lp(w);
    for (std::size_t x = 0; x < w.nx; ++x)
        for (std::size_t s = 0; s < w.ns; ++s) lp.objective[x * w.ns + s] = p[x] * state_cost[s];
    const auto res = solve_lp(lp);
    SymmetrizationCost out;
    if (res.status != LpStatus::Optimal) return out;
    out.kernel = make_kernel(w, res.x);
    double cost = 0.0;
    for (std::size_t x = 0; x < w.nx; ++x)
        for (std::size_t s = 0; s < w.ns; ++s) cost += p[x] * (*out.kernel)(x, s) * state_cost[s];
    out.kernel->cost = cost;
    out.cost = cost;
    return out;
}

double symm_cost_profile(const DiscreteAVCSpec& spec, const ConditionalInput& p) {
    if (p.rows() != spec.nt || p.cols() != spec.nx) throw DimensionMismatch("symm_cost_profile: p has wrong shape");
    double total = 0.0;
    for (std::size_t t = 0; t < spec.nt; ++t) {
        if (spec.param_type[t] == 0.0) continue;
        const double c = min_symm_cost(slice(spec, t), p.row(t), spec.state_cost).cost;
        if (std::isinf(c)) return kInfiniteCost;
        total += spec.param_type[t] * c;
    }
    return total;
}

std::vector<std::size_t> nonsymmetrizable_parameters(const DiscreteAVCSpec& spec) {
    std::vector<std::size_t> out;
    for (std::size_t t : active_parameters(spec))
        if (!find_symmetrizer(slice(spec, t))) out.push_back(t);
    return out;
}

SymmetrizabilityThreshold symm_threshold(const DiscreteAVCSpec& spec) {
    SymmetrizabilityThreshold out;
    out.nonsymmetrizable = nonsymmetrizable_parameters(spec);
    out.argmax = ConditionalInput::uniform(spec.nt, spec.nx);
    if (!out.nonsymmetrizable.empty()) {
        out.value = kInfiniteCost;
        return out;
    }

    // Kelley cutting planes: the profile is a P_T-average of minima of linear functions of p(.|t).
    const std::size_t np = spec.nt * spec.nx;
    const std::size_t nvar = np + spec.nt;
    std::vector<StateChannel> slices;
    for (std::size_t t = 0; t < spec.nt; ++t) slices.push_back(slice(spec, t));

    LinearProgram lp;
    lp.objective.assign(nvar, 0.0);
    for (std::size_t t = 0; t < spec.nt; ++t) {
        lp.objective[np + t] = -spec.param_type[t];
        std::vector<double> row(nvar, 0.0);
        for (std::size_t x = 0; x < spec.nx; ++x) row[t * spec.nx + x] = 1.0;
        lp.add(std::move(row), Relation::Equal, 1.0);
        std::vector<double> cap(nvar, 0.0);
        cap[np + t] = 1.0;
        lp.add(std::move(cap), Relation::LessEqual, max_cost(spec.state_cost));
    }
    {
        std::vector<double> row(nvar, 0.0);
        for (std::size_t t = 0; t < spec.nt; ++t)
            for (std::size_t x = 0; x < spec.nx; ++x) row[t * spec.nx + x] = spec.param_type[t] * spec.input_cost[x];
        lp.add(std::move(row), Relation::LessEqual, spec.constraints.gamma);
    }

    double best = -1.0;
    for (out.iterations = 1; out.iterations <= 500; ++out.iterations) {
        const auto res = solve_lp(lp);
        if (res.status != LpStatus::Optimal)
            throw SolverDidNotConverge("symmetrizability threshold LP failed", kInfiniteCost);
        const double bound = -res.objective;

        ConditionalInput p(spec.nt, spec.nx);
        for (std::size_t t = 0; t < spec.nt; ++t) {
            double sum = 0.0;
            for (std::size_t x = 0; x < spec.nx; ++x) sum += (p(t, x) = std::max(0.0, res.x[t * spec.nx + x]));
            for (std::size_t x = 0; x < spec.nx; ++x) p(t, x) /= sum;
        }
        double value = 0.0;
        for (std::size_t t = 0; t < spec.nt; ++t) {
            if (spec.param_type[t] == 0.0) continue;
            const auto sc = min_symm_cost(slices[t], p.row(t), spec.state_cost);
            value += spec.param_type[t] * sc.cost;
            const auto c = kernel_costs(*sc.kernel, spec.state_cost);
            std::vector<double> cut(nvar, 0.0);
            cut[np + t] = 1.0;
            for (std::size_t x = 0; x < spec.nx; ++x) cut[t * spec.nx + x] = -c[x];
            lp.add(std::move(cut), Relation::LessEqual, 0.0);
        }
        if (value > best) {
            best = value;
            out.argmax = p;
        }
        if (bound - best <= 1e-10) {
            out.value = best;
            return out;
        }
    }
    throw SolverDidNotConverge("symmetrizability threshold cutting planes did not close", kInfiniteCost);
}

// ---------------------------------------------------------------------------
// Capacities
// ---------------------------------------------------------------------------

CapacityResult random_capacity_fixed_params(const DiscreteAVCSpec& spec, const SolverOptions& options) {
    validate(spec);
    const auto outcome = detail::solve_saddle(spec, detail::input_budget_projector(spec),
                                              detail::state_budget_projector(spec), options);
    CapacityResult r = finish(outcome, options.gap_tolerance);
    if (options.oracle_grid > 0 && spec.nt <= 2 && spec.nx <= 3 && spec.ns <= 3) {
        const auto g = grid_oracle(spec, options.oracle_grid);
        r.oracle_value = g.value;
        r.oracle_slack = g.slack;
    }
    return r;
}

GridOracle grid_oracle(const DiscreteAVCSpec& spec, std::size_t steps) {
    validate(spec);
    const auto active = active_parameters(spec);
    if (active.size() > 2 || spec.nx > 3 || spec.ns > 3)
        throw DomainError("grid oracle supports at most two parameters and alphabets of size 3");
    if (steps == 0) throw DomainError("grid oracle needs a positive step count");

    const auto pg = compositions(static_cast<int>(steps), spec.nx);
    const auto qg = compositions(static_cast<int>(steps), spec.ns);
    const double step = 1.0 / static_cast<double>(steps);
    auto to_pmf = [step](const std::vector<int>& v) {
        std::vector<double> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * step;
        return out;
    };
    std::vector<std::vector<double>> pp, qq;
    std::vector<double> cp, cq;
    for (const auto& v : pg) {
        pp.push_back(to_pmf(v));
        cp.push_back(std::inner_product(pp.back().begin(), pp.back().end(), spec.input_cost.begin(), 0.0));
    }
    for (const auto& v : qg) {
        qq.push_back(to_pmf(v));
        cq.push_back(std::inner_product(qq.back().begin(), qq.back().end(), spec.state_cost.begin(), 0.0));
    }
    const std::size_t np = pp.size(), nq = qq.size();

    // tables[k][ip * nq + iq] = I for active parameter k.
    std::vector<std::vector<double>> tables;
    GridOracle out;
    std::vector<double> v, py;
    for (std::size_t k = 0; k < active.size(); ++k) {
        const auto w = slice(spec, active[k]);
        std::vector<double> table(np * nq);
        for (std::size_t ip = 0; ip < np; ++ip)
            for (std::size_t iq = 0; iq < nq; ++iq) table[ip * nq + iq] = slice_info(w, pp[ip], qq[iq], v, py);
        const double pt = spec.param_type[active[k]];
        out.slack += pt * ((static_cast<double>(spec.nx) - 1.0) * adjacent_variation(table, pg, nq, true) +
                           (static_cast<double>(spec.ns) - 1.0) * adjacent_variation(table, qg, np, false));
        tables.push_back(std::move(table));
    }

    const double gamma = spec.constraints.gamma + 1e-12;
    const double lambda = spec.constraints.lambda + 1e-12;
    out.value = kInfiniteCost;
    std::vector<std::size_t> best_q(active.size()), best_p(active.size());

    if (active.size() == 1) {
        const double pt = spec.param_type[active[0]];
        for (std::size_t iq = 0; iq < nq; ++iq) {
            if (pt * cq[iq] > lambda) continue;
            double inner = -1.0;
            std::size_t arg = 0;
            for (std::size_t ip = 0; ip < np; ++ip)
                if (pt * cp[ip] <= gamma && tables[0][ip * nq + iq] > inner) {
                    inner = tables[0][ip * nq + iq];
                    arg = ip;
                }
            if (pt * inner < out.value) {
                out.value = pt * inner;
                best_q[0] = iq;
                best_p[0] = arg;
            }
        }
    } else {
        const double p0 = spec.param_type[active[0]], p1 = spec.param_type[active[1]];
        std::vector<std::size_t> order(np);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cp[a] < cp[b]; });
        std::vector<double> sorted_cost(np);
        for (std::size_t i = 0; i < np; ++i) sorted_cost[i] = cp[order[i]];
        std::vector<double> prefix(np);
        std::vector<std::size_t> prefix_arg(np);
        for (std::size_t iq1 = 0; iq1 < nq; ++iq1) {
            double run = -1.0;
            std::size_t run_arg = 0;
            for (std::size_t i = 0; i < np; ++i) {
                const double val = tables[1][order[i] * nq + iq1];
                if (val > run) {
                    run = val;
                    run_arg = order[i];
                }
                prefix[i] = run;
                prefix_arg[i] = run_arg;
            }
            for (std::size_t iq0 = 0; iq0 < nq; ++iq0) {
                if (p0 * cq[iq0] + p1 * cq[iq1] > lambda) continue;
                double inner = -1.0;
                std::size_t arg0 = 0, arg1 = 0;
                for (std::size_t ip0 = 0; ip0 < np; ++ip0) {
                    const double left = (gamma - p0 * cp[ip0]) / p1;
                    if (left < 0.0) continue;
                    const auto it = std::upper_bound(sorted_cost.begin(), sorted_cost.end(), left);
                    if (it == sorted_cost.begin()) continue;
                    const std::size_t idx = static_cast<std::size_t>(it - sorted_cost.begin()) - 1;
                    const double val = p0 * tables[0][ip0 * nq + iq0] + p1 * prefix[idx];
                    if (val > inner) {
                        inner = val;
                        arg0 = ip0;
                        arg1 = prefix_arg[idx];
                    }
                }
                if (inner >= 0.0 && inner < out.value) {
                    out.value = inner;
                    best_q = {iq0, iq1};
                    best_p = {arg0, arg1};
                }
            }
        }
    }
    if (std::isinf(out.value)) throw DomainError("grid oracle found no feasible grid point");

    out.p = ConditionalInput::uniform(spec.nt, spec.nx);
    out.q = ConditionalState::uniform(spec.nt, spec.ns);
    for (std::size_t k = 0; k < active.size(); ++k) {
        for (std::size_t x = 0; x < spec.nx; ++x) out.p(active[k], x) = pp[best_p[k]][x];
        for (std::size_t s = 0; s < spec.ns; ++s) out.q(active[k], s) = qq[best_q[k]][s];
    }
    return out;
}

double parameter_capacity(const DiscreteAVCSpec& spec, std::size_t t, double omega, double lambda,
                          const SolverOptions& options) {
    if (t >= spec.nt) throw DimensionMismatch("parameter index out of range");
    const auto sub = single_parameter(spec, t, std::max(0.0, omega), std::max(0.0, lambda));
    SolverOptions opts = options;
    opts.restarts = std::min(options.restarts, 2);
    opts.oracle_grid = 0;
    const auto outcome = detail::solve_saddle(sub, detail::input_budget_projector(sub),
                                              detail::state_budget_projector(sub), opts);
    return finish(outcome, options.gap_tolerance).value;
}

DecompositionResult per_parameter_decomposition(const DiscreteAVCSpec& spec, const SolverOptions& options) {
    validate(spec);
    const auto active = active_parameters(spec);
    std::vector<double> weight;
    for (std::size_t t : active) weight.push_back(spec.param_type[t]);
    const double phi_max = max_cost(spec.input_cost), l_max = max_cost(spec.state_cost);

    DecompositionResult out;
    std::vector<double> best_omega;
    auto inner = [&](const std::vector<double>& lambda) {
        auto value_at = [&](const std::vector<double>& omega) {
            double v = 0.0;
            for (std::size_t k = 0; k < active.size(); ++k)
                v += weight[k] * parameter_capacity(spec, active[k], omega[k], lambda[k], options);
            return v;
        };
        auto [omega, v] = allocate(value_at, weight, spec.constraints.gamma, phi_max, true, out.evaluations);
        best_omega = omega;
        return v;
    };
    std::vector<double> omega_at_best;
    double best = kInfiniteCost;
    auto outer = [&](const std::vector<double>& lambda) {
        const double v = inner(lambda);
        if (v < best) {
            best = v;
            omega_at_best = best_omega;
        }
        return v;
    };
    auto [lambda, value] = allocate(outer, weight, spec.constraints.lambda, l_max, false, out.evaluations);
    out.value = value;
    out.omega.assign(spec.nt, 0.0);
    out.lambda.assign(spec.nt, 0.0);
    for (std::size_t k = 0; k < active.size(); ++k) {
        out.omega[active[k]] = omega_at_best.empty() ? 0.0 : omega_at_best[k];
        out.lambda[active[k]] = lambda[k];
    }
    return out;
}

DeterministicCapacity deterministic_capacity_fixed_params(const DiscreteAVCSpec& spec, const SolverOptions& options) {
    validate(spec);
    DeterministicCapacity out;
    const auto threshold = symm_threshold(spec);
    out.threshold = threshold.value;
    out.nonsymmetrizable = threshold.nonsymmetrizable;
    const double lambda = spec.constraints.lambda;

    if (out.threshold < lambda - kDecisionMargin) {
        out.branch = DeterministicCapacity::Branch::Zero;
        out.value = 0.0;
        return out;
    }
    out.boundary = std::abs(out.threshold - lambda) <= kDecisionMargin;
    out.branch = out.boundary ? DeterministicCapacity::Branch::Boundary : DeterministicCapacity::Branch::Positive;

    // If the unconstrained maximizer already meets the symmetrization budget, the restriction is inactive.
    auto unconstrained = random_capacity_fixed_params(spec, options);
    if (std::isinf(out.threshold) || symm_cost_profile(spec, unconstrained.p) >= lambda - 1e-12) {
        out.value = unconstrained.value;
        out.saddle = std::move(unconstrained);
        return out;
    }

    // Outer approximation of {p : profile(p) >= lambda} by cuts from minimizing kernels.
    std::vector<StateChannel> slices;
    for (std::size_t t = 0; t < spec.nt; ++t) slices.push_back(slice(spec, t));
    auto cuts = std::make_shared<std::vector<HalfSpace>>();
    auto guard = std::make_shared<std::mutex>();
    const auto base = detail::input_budget_projector(spec);
    const detail::Projector project_p = [&spec, &slices, cuts, guard, base, lambda](std::span<double> x) {
        const std::vector<double> start(x.begin(), x.end());
        for (int round = 0; round < 100; ++round) {
            std::vector<HalfSpace> local;
            {
                std::lock_guard lock(*guard);
                local = *cuts;
            }
            std::copy(start.begin(), start.end(), x.begin());
            if (local.empty())
                base(x);
            else
                dykstra(x, base, local);
            HalfSpace cut{std::vector<double>(x.size(), 0.0), lambda};
            double profile = 0.0;
            for (std::size_t t = 0; t < spec.nt; ++t) {
                const double pt = spec.param_type[t];
                if (pt == 0.0) continue;
                const auto sc = min_symm_cost(slices[t], x.subspan(t * spec.nx, spec.nx), spec.state_cost);
                profile += pt * sc.cost;
                const auto c = kernel_costs(*sc.kernel, spec.state_cost);
                for (std::size_t k = 0; k < spec.nx; ++k) cut.a[t * spec.nx + k] = pt * c[k];
            }
            if (profile >= lambda - 1e-10) return;
            std::lock_guard lock(*guard);
            cuts->push_back(std::move(cut));
        }
    };
    const auto outcome = detail::solve_saddle(spec, project_p, detail::state_budget_projector(spec), options);
    out.saddle = finish(outcome, options.gap_tolerance);
    out.value = out.saddle->value;
    return out;
}

}  // namespace avc
