#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "avc/channel_model.hpp"
#include "avc/jacobi.hpp"
#include "avc/waterfill.hpp"

namespace avc {

inline constexpr std::size_t kDefaultGrid = 4096;

/// r(l) = (1/2pi) int Psi(w) cos(l w) dw for l = 0..max_lag. Exact for the cosine-series
/// representation; midpoint quadrature on the sample grid otherwise.
std::vector<double> autocorr_from_psd(const SpectralSpec& spec, std::size_t max_lag);

/// Frequency-domain double water filling sampled on an M-point midpoint grid.
struct SpectralAllocation {
    double beta = 0.0;
    double alpha = 0.0;
    std::vector<double> omega;
    std::vector<double> psi;
    std::vector<double> b_star;
    std::vector<double> a_star;
};

SpectralAllocation freq_double_waterfill(const SpectralSpec& spec, std::size_t grid = kDefaultGrid);

struct ColoredCapacity {
    double random = 0.0;
    double deterministic = 0.0;
};

ColoredCapacity colored_capacity(const SpectralSpec& spec, std::size_t grid = kDefaultGrid);

/// Capacity integrand evaluated from an existing allocation.
double colored_capacity_from(const SpectralAllocation& allocation);

/// Output-to-interference log ratio as a function of the noise level x:
/// 1/2 log2(alpha/beta) below beta, 1/2 log2(alpha/x) up to alpha, then 0.
double eval_G(double x, double alpha, double beta);

/// Eigenvalues of the n x n Toeplitz covariance, clamped to 0 in [-1e-9, 0).
struct ToeplitzModel {
    std::size_t n = 0;
    std::vector<double> eigenvalues;
    int sweeps = 0;
    bool converged = false;
};

ToeplitzModel toeplitz_model(std::span<const double> r, std::size_t n);

struct ToeplitzCapacity {
    double capacity = 0.0;
    ToeplitzModel model;
    WaterfillAllocation allocation;  // b* in n_star, a* in p_star; budgets n lambda and n gamma
};

/// Double water filling over the covariance eigenvalues (floored at 1e-12).
ToeplitzCapacity toeplitz_capacity_detail(std::span<const double> r, std::size_t n, double gamma, double lambda);

/// Same as above applied to precomputed eigenvalues.
ToeplitzCapacity eigenvalue_capacity(std::vector<double> eigenvalues, double gamma, double lambda);

double toeplitz_capacity(std::span<const double> r, std::size_t n, double gamma, double lambda);

struct SzegoRow {
    std::size_t n = 0;
    double c_n = 0.0;
    double gap = 0.0;
};

struct SzegoTable {
    double c_infinity = 0.0;
    std::vector<SzegoRow> rows;
    bool monotone = true;  // each gap <= 1.1 x the previous one (+1e-12)
};

SzegoTable szego_convergence(std::span<const double> r, double gamma, double lambda,
                             std::span<const std::size_t> n_list, std::size_t grid = kDefaultGrid);

}  // namespace avc
