#pragma once

#include <array>
#include <optional>

#include "avc/channel_model.hpp"
#include "avc/discrete_avc.hpp"

namespace avc {

/// Y = X + S + Z_t mod 2 with Z_t ~ Bernoulli(eps_t), P_T uniform on {0, 1}, Hamming costs.
DiscreteAVCSpec bsc_spec(double eps0, double eps1, double gamma, double lambda);

/// Constant-parameter capacity of the binary AVC with input budget omega and state budget lambda.
double c_tilde(double omega, double lambda, double eps);

struct BscExampleReport {
    std::array<double, 2> eps{};
    Constraints constraints;
    std::array<double, 2> omega{};   // per-parameter input budgets
    std::array<double, 2> lambda{};  // per-parameter state budgets
    double threshold = 0.0;          // L*
    double c_joint = 0.0;
    double c_split = 0.0;
    bool superadditive = false;
    std::optional<double> numeric;   // min-max solver value on the same spec
};

/// Joint versus split coding on the two-slice binary example. Requires 0 < eps0 < eps1 < 1/2.
BscExampleReport bsc_example(double eps0, double eps1, double gamma, double lambda, bool with_numeric = false,
                             const SolverOptions& options = {});

}  // namespace avc
