#pragma once

// Projected-gradient machinery behind the discrete capacity solvers.

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "avc/discrete_avc.hpp"

namespace avc::detail {

using Projector = std::function<void(std::span<double>)>;

/// Objective value and gradient at a point.
using Oracle = std::function<std::pair<double, std::vector<double>>(const std::vector<double>&)>;

struct DescentResult {
    std::vector<double> x;
    double value = 0.0;
    double pg_norm = 0.0;  // max-norm of x - P(x - grad)
    int iterations = 0;
};

/// Minimizes over the projector's set with Armijo backtracking along the projection arc.
DescentResult projected_descent(std::vector<double> x, const Oracle& oracle, const Projector& project,
                                double tolerance, int max_iterations);

/// Rows are pmfs and the P_T-weighted input cost stays within gamma.
Projector input_budget_projector(const DiscreteAVCSpec& spec);
Projector state_budget_projector(const DiscreteAVCSpec& spec);

struct SaddleOutcome {
    double upper = 0.0;
    double lower = 0.0;
    ConditionalState q;
    ConditionalInput p;
    int iterations = 0;
};

/// Bounds min_q max_p I and max_p min_q I from several random starts.
SaddleOutcome solve_saddle(const DiscreteAVCSpec& spec, const Projector& project_p, const Projector& project_q,
                           const SolverOptions& options);

/// Best response of the input player to a fixed jammer strategy.
std::pair<ConditionalInput, double> best_input(const DiscreteAVCSpec& spec, const ConditionalState& q,
                                               ConditionalInput start, const Projector& project_p);

/// Best response of the jammer to a fixed input.
std::pair<ConditionalState, double> best_state(const DiscreteAVCSpec& spec, const ConditionalInput& p,
                                               ConditionalState start, const Projector& project_q);

}  // namespace avc::detail
