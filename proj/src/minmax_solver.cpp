#include "minmax_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "avc/errors.hpp"
#include "avc/projection.hpp"
#include "avc/rng.hpp"

namespace avc::detail {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kInnerTolerance = 1e-10;
constexpr int kInnerIterations = 5000;

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

template <typename Tag>
Conditional<Tag> random_point(std::size_t rows, std::size_t cols, std::mt19937_64& rng, const Projector& project) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> data(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < cols; ++c) sum += (data[r * cols + c] = exp1(rng));
        for (std::size_t c = 0; c < cols; ++c) data[r * cols + c] /= sum;
    }
    project(data);
    return Conditional<Tag>(rows, cols, std::move(data));
}

}  // namespace

DescentResult projected_descent(std::vector<double> x, const Oracle& oracle, const Projector& project,
                                double tolerance, int max_iterations) {
    project(x);
    auto [f, g] = oracle(x);
    double step = 1.0;
    int flat = 0;  // consecutive accepted steps without a strict decrease
    DescentResult out;
    std::vector<double> trial(x.size());
    for (out.iterations = 0; out.iterations < max_iterations; ++out.iterations) {
        for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - g[i];
        project(trial);
        out.pg_norm = max_abs_diff(trial, x);
        if (out.pg_norm <= tolerance) break;

        bool accepted = false;
        while (step > 1e-16) {
            for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - step * g[i];
            project(trial);
            double descent = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) descent += g[i] * (trial[i] - x[i]);
            auto [ft, gt] = oracle(trial);
            if (ft <= f + kArmijo * descent) {
                flat = ft < f ? 0 : flat + 1;
                x = trial;
                f = ft;
                g = std::move(gt);
                step = std::min(step * 2.0, 1e4);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted || flat >= 10) break;  // no decrease representable at this resolution
    }
    out.x = std::move(x);
    out.value = f;
    return out;
}

Projector input_budget_projector(const DiscreteAVCSpec& spec) {
    return [&spec](std::span<double> x) {
        project_rows_with_budget(x, spec.nt, spec.nx, spec.param_type, spec.input_cost, spec.constraints.gamma);
    };
}

Projector state_budget_projector(const DiscreteAVCSpec& spec) {
    return [&spec](std::span<double> x) {
        project_rows_with_budget(x, spec.nt, spec.ns, spec.param_type, spec.state_cost, spec.constraints.lambda);
    };
}

std::pair<ConditionalInput, double> best_input(const DiscreteAVCSpec& spec, const ConditionalState& q,
                                               ConditionalInput start, const Projector& project_p) {
    const Oracle oracle = [&](const std::vector<double>& x) {
        const ConditionalInput p(spec.nt, spec.nx, x);
        auto info = mutual_info_gradient(spec, p, q, true, false);
        for (double& v : info.grad_p) v = -v;
        return std::make_pair(-info.value, std::move(info.grad_p));
    };
    const auto flat = start.flat();
    auto res = projected_descent({flat.begin(), flat.end()}, oracle, project_p, kInnerTolerance, kInnerIterations);
    return {ConditionalInput(spec.nt, spec.nx, std::move(res.x)), -res.value};
}

std::pair<ConditionalState, double> best_state(const DiscreteAVCSpec& spec, const ConditionalInput& p,
                                               ConditionalState start, const Projector& project_q) {
    const Oracle oracle = [&](const std::vector<double>& x) {
        const ConditionalState q(spec.nt, spec.ns, x);
        auto info = mutual_info_gradient(spec, p, q, false, true);
        return std::make_pair(info.value, std::move(info.grad_q));
    };
    const auto flat = start.flat();
    auto res = projected_descent({flat.begin(), flat.end()}, oracle, project_q, kInnerTolerance, kInnerIterations);
    return {ConditionalState(spec.nt, spec.ns, std::move(res.x)), res.value};
}

SaddleOutcome solve_saddle(const DiscreteAVCSpec& spec, const Projector& project_p, const Projector& project_q,
                           const SolverOptions& options) {
    const std::size_t restarts = static_cast<std::size_t>(std::max(1, options.restarts));
    struct Run {
        double upper = 0.0, lower = 0.0;
        ConditionalState q;
        ConditionalInput p;
        int iterations = 0;
    };
    std::vector<Run> runs(restarts);

    parallel_for(restarts, [&](std::size_t r) {
        auto rng = make_rng(options.seed, 17, r);
        Run& run = runs[r];
        ConditionalState q0 = random_point<StateTag>(spec.nt, spec.ns, rng, project_q);
        ConditionalInput p0 = random_point<InputTag>(spec.nt, spec.nx, rng, project_p);

        // Upper bound: minimize f(q) = max_p I, gradient by Danskin at the inner maximizer.
        ConditionalInput p_warm = p0;
        const Oracle upper_oracle = [&](const std::vector<double>& x) {
            const ConditionalState q(spec.nt, spec.ns, x);
            auto [p_star, value] = best_input(spec, q, p_warm, project_p);
            p_warm = p_star;
            auto info = mutual_info_gradient(spec, p_star, q, false, true);
            return std::make_pair(info.value, std::move(info.grad_q));
        };
        const auto qf = q0.flat();
        auto up = projected_descent({qf.begin(), qf.end()}, upper_oracle, project_q, options.tolerance,
                                    options.max_iterations);
        run.q = ConditionalState(spec.nt, spec.ns, up.x);
        run.upper = best_input(spec, run.q, p_warm, project_p).second;

        // Lower bound: maximize g(p) = min_q I.
        ConditionalState q_warm = run.q;
        const Oracle lower_oracle = [&](const std::vector<double>& x) {
            const ConditionalInput p(spec.nt, spec.nx, x);
            auto [q_star, value] = best_state(spec, p, q_warm, project_q);
            q_warm = q_star;
            auto info = mutual_info_gradient(spec, p, q_star, true, false);
            for (double& v : info.grad_p) v = -v;
            return std::make_pair(-info.value, std::move(info.grad_p));
        };
        const auto pf = p0.flat();
        auto lo = projected_descent({pf.begin(), pf.end()}, lower_oracle, project_p, options.tolerance,
                                    options.max_iterations);
        run.p = ConditionalInput(spec.nt, spec.nx, lo.x);
        run.lower = best_state(spec, run.p, q_warm, project_q).second;
        run.iterations = up.iterations + lo.iterations;
    });

    SaddleOutcome out;
    out.upper = std::numeric_limits<double>::infinity();
    out.lower = -std::numeric_limits<double>::infinity();
    for (auto& run : runs) {
        if (run.upper < out.upper) {
            out.upper = run.upper;
            out.q = run.q;
        }
        if (run.lower > out.lower) {
            out.lower = run.lower;
            out.p = run.p;
        }
        out.iterations += run.iterations;
    }
    return out;
}

}  // namespace avc::detail
