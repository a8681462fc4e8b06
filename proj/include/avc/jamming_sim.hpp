#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace avc {

enum class JammerStrategy { IidGaussian, CodewordMimic };

JammerStrategy parse_strategy(const std::string& name);
std::string to_string(JammerStrategy s);

struct SimConfig {
    std::size_t n = 1;
    double rate = 0.0;  // bits per channel use; M = round(2^(n R))
    double gamma = 1.0;
    double lambda = 1.0;
    double sigma2 = 1.0;
    JammerStrategy strategy = JammerStrategy::IidGaussian;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
};

/// Codebooks up to this size are drawn explicitly; larger ones are sampled implicitly per trial.
inline constexpr double kExplicitCodebookLimit = 4096.0;

struct SimReport {
    double error_rate = 0.0;
    double half_width = 0.0;  // 95% normal-approximation half-width
    std::size_t errors = 0;
    std::size_t trials = 0;
    double log2_messages = 0.0;
    bool explicit_codebook = true;
    JammerStrategy strategy = JammerStrategy::IidGaussian;
};

using Codeword = std::vector<double>;
using Codebook = std::vector<Codeword>;

/// M points uniform on the sphere of radius sqrt(n gamma).
Codebook gen_codebook(std::size_t n, std::size_t messages, double gamma, std::mt19937_64& rng);

/// argmin_m ||y - x_m||^2, lowest index on ties.
std::size_t min_dist_decode(const std::vector<double>& y, const Codebook& codebook);

/// Jammer output with ||s||^2 <= n lambda.
std::vector<double> make_state(JammerStrategy strategy, const Codebook& codebook, double gamma, double lambda,
                               std::mt19937_64& rng);

/// Number of messages round(2^(n R)) for explicit codebooks. Throws ValidationError when the config is invalid.
double message_count(const SimConfig& config);

SimReport simulate(const SimConfig& config);

}  // namespace avc
