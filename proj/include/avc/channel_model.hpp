#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace avc {

/// Per-symbol average budgets: input power/cost and state power/cost.
/// Loaders reject zero budgets; library routines accept them as degenerate cases.
struct Constraints {
    double gamma = 0.0;
    double lambda = 0.0;

    bool operator==(const Constraints&) const = default;
};

/// d parallel additive Gaussian channels sharing one input budget and one jammer budget.
struct ParallelGaussianSpec {
    std::vector<double> sigma2;
    Constraints constraints;

    std::size_t d() const noexcept { return sigma2.size(); }
    bool operator==(const ParallelGaussianSpec&) const = default;
};

/// PSD samples on the midpoint grid w_k = -pi + (k + 1/2) 2pi/M, k = 0..M-1.
/// Each sample stands for its whole cell.
struct SampledPsd {
    std::vector<double> values;
    bool operator==(const SampledPsd&) const = default;
};

/// Psi(w) = r(0) + 2 sum_{l>=1} r(l) cos(l w).
struct AutocorrPsd {
    std::vector<double> r;
    bool operator==(const AutocorrPsd&) const = default;
};

struct SpectralSpec {
    std::variant<SampledPsd, AutocorrPsd> psd;
    Constraints constraints;

    bool operator==(const SpectralSpec&) const = default;
};

/// Finite-alphabet AVC with a known parameter sequence summarized by its type P_T.
/// The kernel is stored flat in [t][x][s][y] order.
struct DiscreteAVCSpec {
    std::size_t nx = 0, ns = 0, nt = 0, ny = 0;
    std::vector<double> kernel;
    std::vector<double> param_type;
    std::vector<double> input_cost;
    std::vector<double> state_cost;
    Constraints constraints;

    std::size_t index(std::size_t t, std::size_t x, std::size_t s, std::size_t y) const noexcept {
        return ((t * nx + x) * ns + s) * ny + y;
    }
    double w(std::size_t t, std::size_t x, std::size_t s, std::size_t y) const noexcept {
        return kernel[index(t, x, s, y)];
    }
    bool operator==(const DiscreteAVCSpec&) const = default;
};

/// Y = t X + S + Z with t drawn from a finite set of fixed fading coefficients.
struct FadingSpec {
    std::vector<double> theta;
    std::vector<double> param_type;
    double sigma2 = 1.0;
    Constraints constraints;

    bool operator==(const FadingSpec&) const = default;
};

enum class SpecKind { Product, Spectral, Discrete, Fading };

using AnySpec = std::variant<ParallelGaussianSpec, SpectralSpec, DiscreteAVCSpec, FadingSpec>;

SpecKind parse_spec_kind(const std::string& name);

// Validation. Each throws ValidationError naming the offending field.
void validate(const Constraints& c);
void validate(const ParallelGaussianSpec& spec);
void validate(const SpectralSpec& spec);
void validate(const DiscreteAVCSpec& spec);
void validate(const FadingSpec& spec);

// JSON mapping. from_json_* validate; to_json never loses precision.
ParallelGaussianSpec product_from_json(const nlohmann::json& j);
SpectralSpec spectral_from_json(const nlohmann::json& j);
DiscreteAVCSpec discrete_from_json(const nlohmann::json& j);
FadingSpec fading_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ParallelGaussianSpec& spec);
nlohmann::json to_json(const SpectralSpec& spec);
nlohmann::json to_json(const DiscreteAVCSpec& spec);
nlohmann::json to_json(const FadingSpec& spec);

AnySpec spec_from_json(const nlohmann::json& j, SpecKind kind);
nlohmann::json to_json(const AnySpec& spec);

/// Reads, parses and validates a spec file. Throws ParseError or ValidationError.
AnySpec load_spec(const std::filesystem::path& path, SpecKind kind);

template <typename Spec>
Spec load_spec_as(const std::filesystem::path& path, SpecKind kind) {
    return std::get<Spec>(load_spec(path, kind));
}

/// Psi on the M-point midpoint grid. Sampled PSDs are treated as piecewise constant per cell.
std::vector<double> psd_on_grid(const SpectralSpec& spec, std::size_t grid);

/// Midpoint grid frequency of cell k.
double grid_frequency(std::size_t k, std::size_t grid) noexcept;

/// Evaluates the cosine series exactly.
double autocorr_psd_at(const AutocorrPsd& psd, double omega) noexcept;

}  // namespace avc
