#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "avc/channel_model.hpp"

namespace avc {

/// Level L with sum_j [L - floor_j]_+ = volume. Zero volume returns min floor.
double water_level(std::span<const double> floor, double volume);

/// Level L with sum_j weight_j [L - floor_j]_+ = volume. Entries with infinite floor or
/// zero weight never receive water.
double weighted_water_level(std::span<const double> floor, std::span<const double> weight, double volume);

/// Jammer level beta and allocation N*, then user level alpha and allocation P*.
struct WaterfillAllocation {
    double beta = 0.0;
    double alpha = 0.0;
    std::vector<double> n_star;
    std::vector<double> p_star;
};

WaterfillAllocation double_waterfill(std::span<const double> sigma2, const Constraints& budgets);
WaterfillAllocation double_waterfill(const ParallelGaussianSpec& spec);

/// sum_j 1/2 log2(1 + P_j / (N_j + sigma_j^2)) for an arbitrary profile.
double product_payoff(std::span<const double> sigma2, std::span<const double> p, std::span<const double> n);

/// Closed form sum_j 1/2 log2(max(alpha, sigma_j^2) / max(beta, sigma_j^2)).
double level_form_capacity(std::span<const double> sigma2, double alpha, double beta);

double random_code_capacity_product(const ParallelGaussianSpec& spec);

/// Random capacity when gamma > lambda, 0 otherwise (including gamma == lambda).
double deterministic_code_capacity_product(const ParallelGaussianSpec& spec);

struct ScalarCapacity {
    double random = 0.0;
    double deterministic = 0.0;
};

ScalarCapacity scalar_capacity(double gamma, double lambda, double sigma2);

struct KKTReport {
    double theta = 0.0;
    double budget_residual = 0.0;             // |sum N_j - lambda|
    std::vector<double> nonnegativity;        // [-N_j]_+
    std::vector<double> inequality;           // [ratio_j - theta]_+
    std::vector<double> slackness;            // |(theta - ratio_j) N_j|
    bool pass = false;
};

/// Checks the jammer's KKT conditions at theta = (alpha - beta) / (alpha beta).
/// Throws DimensionMismatch when the allocation does not fit the spec.
KKTReport verify_kkt(const ParallelGaussianSpec& spec, const WaterfillAllocation& allocation, double tol);

struct SaddleReport {
    double max_user_gain = 0.0;
    double max_jammer_gain = 0.0;
};

/// Random unilateral deviations on each player's budget simplex against the given profile.
SaddleReport saddle_check(const ParallelGaussianSpec& spec, const WaterfillAllocation& allocation,
                          std::size_t trials, std::uint64_t seed);

/// Minimal jammer power that symmetrizes a Gaussian input with these per-dimension powers.
double gaussian_symm_cost(std::span<const double> input_power);

}  // namespace avc
