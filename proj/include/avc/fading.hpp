#pragma once

#include <vector>

#include "avc/channel_model.hpp"

namespace avc {

struct FadingAllocation {
    std::vector<double> omega;   // user power per coefficient value
    std::vector<double> lambda;  // jammer power per coefficient value
};

struct FadingCapacity {
    double value = 0.0;  // bits
    FadingAllocation allocation;
    double upper = 0.0;  // max over omega at the returned lambda
    double lower = 0.0;  // min over lambda at the returned omega
    double gap = 0.0;
    int iterations = 0;
};

/// E[1/2 log2(1 + T^2 omega(T) / (lambda(T) + sigma^2))] for a given allocation.
double fading_payoff(const FadingSpec& spec, const std::vector<double>& omega, const std::vector<double>& lambda);

/// User water filling on floors (lambda_t + sigma^2) / t^2 with weights P_T. Coefficients t = 0 get nothing.
std::vector<double> fading_user_response(const FadingSpec& spec, const std::vector<double>& lambda);

/// Jammer best response to a fixed user allocation.
std::vector<double> fading_jammer_response(const FadingSpec& spec, const std::vector<double>& omega);

/// min over lambda(.) of max over omega(.) with E omega(T) <= gamma and E lambda(T) <= lambda.
FadingCapacity fading_random_capacity(const FadingSpec& spec, double gap_tolerance = 1e-5);

struct FadingDetCapacity {
    double value = 0.0;
    double threshold = 0.0;  // L* = gamma * max t^2 over coefficients with positive mass
    bool boundary = false;   // |L* - lambda| <= 1e-6
    FadingCapacity saddle;   // meaningful when the threshold exceeds lambda
};

/// Deterministic-code capacity: adds E(T^2 omega(T)) >= lambda to the user's feasible set.
FadingDetCapacity fading_det_capacity(const FadingSpec& spec, double gap_tolerance = 1e-5);

}  // namespace avc
