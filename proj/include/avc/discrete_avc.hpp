#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "avc/channel_model.hpp"
#include "avc/information.hpp"

namespace avc {

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Symmetrizability
// ---------------------------------------------------------------------------

/// J(s|x) making sum_s W(y|x1,s) J(s|x2) symmetric in (x1, x2).
struct SymmetrizingKernel {
    std::size_t nx = 0, ns = 0;
    std::vector<double> j;  // [x][s]
    double cost = 0.0;      // sum_x p(x) sum_s J(s|x) l(s) under the p it was optimized for
    double residual = 0.0;  // max |symmetrization equality violation|
    bool zero_one = false;  // every entry is 0 or 1 (to 1e-9)

    double operator()(std::size_t x, std::size_t s) const noexcept { return j[x * ns + s]; }
};

double symmetrization_residual(const StateChannel& w, std::span<const double> kernel);

/// Any symmetrizing kernel, or nullopt when the slice is not symmetrizable.
std::optional<SymmetrizingKernel> find_symmetrizer(const StateChannel& w);

struct SymmetrizationCost {
    double cost = kInfiniteCost;
    std::optional<SymmetrizingKernel> kernel;
};

/// min over symmetrizing J of sum_x p(x) sum_s J(s|x) l(s); +inf when none exists.
SymmetrizationCost min_symm_cost(const StateChannel& w, std::span<const double> p, std::span<const double> state_cost);

/// P_T-average of the per-parameter minimal symmetrization cost.
double symm_cost_profile(const DiscreteAVCSpec& spec, const ConditionalInput& p);

/// Parameters with positive mass whose slice is not symmetrizable.
std::vector<std::size_t> nonsymmetrizable_parameters(const DiscreteAVCSpec& spec);

struct SymmetrizabilityThreshold {
    double value = 0.0;  // +inf when some parameter of positive mass is not symmetrizable
    ConditionalInput argmax;
    int iterations = 0;
    std::vector<std::size_t> nonsymmetrizable;
};

/// Largest minimal symmetrization cost over inputs meeting the input budget.
SymmetrizabilityThreshold symm_threshold(const DiscreteAVCSpec& spec);

// ---------------------------------------------------------------------------
// Capacities
// ---------------------------------------------------------------------------

struct SolverOptions {
    double tolerance = 1e-6;       // projected-gradient norm for the outer players
    double gap_tolerance = 1e-5;   // allowed upper - lower bound gap before giving up
    int max_iterations = 5000;
    int restarts = 8;
    std::uint64_t seed = 1;
    std::size_t oracle_grid = 0;   // 0: no grid oracle; otherwise grid step 1/oracle_grid
};

struct CapacityResult {
    double value = 0.0;
    ConditionalState q;  // minimizing jammer strategy
    ConditionalInput p;  // maximizing input
    double upper = 0.0;  // min_q max_p found
    double lower = 0.0;  // max_p min_q found
    double gap = 0.0;
    int iterations = 0;
    std::optional<double> oracle_value;
    std::optional<double> oracle_slack;
};

/// min over q of max over p of I_q(X;Y|T) under both average-cost budgets.
CapacityResult random_capacity_fixed_params(const DiscreteAVCSpec& spec, const SolverOptions& options = {});

struct GridOracle {
    double value = 0.0;
    double slack = 0.0;  // bound on |grid value - continuous value|
    ConditionalInput p;
    ConditionalState q;
};

/// Exhaustive min-max over grid points of step 1/steps. Supports |T| <= 2 and |X|, |S| <= 3.
GridOracle grid_oracle(const DiscreteAVCSpec& spec, std::size_t steps);

struct DecompositionResult {
    double value = 0.0;
    std::vector<double> omega;   // per-parameter input budgets
    std::vector<double> lambda;  // per-parameter state budgets
    int evaluations = 0;
};

/// Constrained saddle value of one parameter slice with budgets (omega, lambda).
double parameter_capacity(const DiscreteAVCSpec& spec, std::size_t t, double omega, double lambda,
                          const SolverOptions& options = {});

/// min over lambda(t) of max over omega(t) of sum_t P_T(t) C_t(omega_t, lambda_t).
DecompositionResult per_parameter_decomposition(const DiscreteAVCSpec& spec, const SolverOptions& options = {});

struct DeterministicCapacity {
    enum class Branch { Positive, Zero, Boundary };

    double value = 0.0;
    double threshold = 0.0;  // L*
    Branch branch = Branch::Zero;
    bool boundary = false;   // |L* - lambda| <= 1e-6; value computed but not decided
    std::optional<CapacityResult> saddle;
    std::vector<std::size_t> nonsymmetrizable;
};

/// Deterministic-code capacity: 0 below the symmetrizability threshold, otherwise the
/// min-max restricted to inputs whose minimal symmetrization cost is at least lambda.
DeterministicCapacity deterministic_capacity_fixed_params(const DiscreteAVCSpec& spec,
                                                          const SolverOptions& options = {});

}  // namespace avc
