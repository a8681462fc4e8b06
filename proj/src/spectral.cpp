#include "avc/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "avc/errors.hpp"
#include "avc/units.hpp"

namespace avc {

namespace {

constexpr double kEigenClamp = 1e-9;
constexpr double kEigenFloor = 1e-12;
constexpr std::size_t kMinGrid = 64;

}  // namespace

std::vector<double> autocorr_from_psd(const SpectralSpec& spec, std::size_t max_lag) {
    std::vector<double> r(max_lag + 1, 0.0);
    if (const auto* ac = std::get_if<AutocorrPsd>(&spec.psd)) {
        for (std::size_t l = 0; l <= max_lag && l < ac->r.size(); ++l) r[l] = ac->r[l];
        return r;
    }
    const auto& values = std::get<SampledPsd>(spec.psd).values;
    const std::size_t m = values.size();
    for (std::size_t l = 0; l <= max_lag; ++l) {
        double acc = 0.0;
        for (std::size_t k = 0; k < m; ++k)
            acc += values[k] * std::cos(static_cast<double>(l) * grid_frequency(k, m));
        r[l] = acc / static_cast<double>(m);
    }
    return r;
}

SpectralAllocation freq_double_waterfill(const SpectralSpec& spec, std::size_t grid) {
    if (grid < kMinGrid) throw DomainError("spectral grid must have at least 64 points");
    const double m = static_cast<double>(grid);
    const double gamma = spec.constraints.gamma, lambda = spec.constraints.lambda;

    SpectralAllocation out;
    out.psi = psd_on_grid(spec, grid);
    out.omega.resize(grid);
    for (std::size_t k = 0; k < grid; ++k) out.omega[k] = grid_frequency(k, grid);

    // (1/2pi) int f dw is the grid mean under midpoint quadrature.
    out.beta = water_level(out.psi, m * lambda);
    out.b_star.resize(grid);
    std::vector<double> combined(grid);
    for (std::size_t k = 0; k < grid; ++k) {
        out.b_star[k] = lambda > 0.0 ? pos(out.beta - out.psi[k]) : 0.0;
        combined[k] = out.b_star[k] + out.psi[k];
    }
    out.alpha = water_level(combined, m * gamma);
    out.a_star.resize(grid);
    for (std::size_t k = 0; k < grid; ++k) out.a_star[k] = gamma > 0.0 ? pos(out.alpha - combined[k]) : 0.0;
    return out;
}

double colored_capacity_from(const SpectralAllocation& a) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.psi.size(); ++k) {
        const double interference = std::max(a.b_star[k] + a.psi[k], kEigenFloor);
        acc += 0.5 * std::log2(1.0 + a.a_star[k] / interference);
    }
    return acc / static_cast<double>(a.psi.size());
}

ColoredCapacity colored_capacity(const SpectralSpec& spec, std::size_t grid) {
    ColoredCapacity c;
    c.random = colored_capacity_from(freq_double_waterfill(spec, grid));
    c.deterministic = spec.constraints.gamma > spec.constraints.lambda ? c.random : 0.0;
    return c;
}

double eval_G(double x, double alpha, double beta) {
    if (!(beta >= 0.0 && alpha >= beta && x >= 0.0))
        throw DomainError("eval_G: need alpha >= beta >= 0 and x >= 0");
    if (beta == 0.0 && x < alpha) throw DomainError("eval_G: log diverges at beta = 0");
    if (x < beta) return 0.5 * std::log2(alpha / beta);
    if (x < alpha) return 0.5 * std::log2(alpha / x);
    return 0.0;
}

ToeplitzModel toeplitz_model(std::span<const double> r, std::size_t n) {
    if (n == 0) throw DomainError("toeplitz: block length must be >= 1");
    const auto eig = toeplitz_eigenvalues(r, n);
    ToeplitzModel model;
    model.n = n;
    model.sweeps = eig.sweeps;
    model.converged = eig.converged;
    model.eigenvalues = eig.eigenvalues;
    for (double& v : model.eigenvalues) {
        if (v < -kEigenClamp)
            throw NotPSD("toeplitz covariance has eigenvalue " + std::to_string(v) + " at n = " +
                             std::to_string(n),
                         v);
        if (v < 0.0) v = 0.0;
    }
    return model;
}

ToeplitzCapacity eigenvalue_capacity(std::vector<double> eigenvalues, double gamma, double lambda) {
    ToeplitzCapacity out;
    const std::size_t n = eigenvalues.size();
    std::vector<double> floor(n);
    for (std::size_t i = 0; i < n; ++i) floor[i] = std::max(eigenvalues[i], kEigenFloor);
    const double dn = static_cast<double>(n);
    out.allocation = double_waterfill(floor, Constraints{dn * gamma, dn * lambda});
    out.capacity = product_payoff(floor, out.allocation.p_star, out.allocation.n_star) / dn;
    out.model.n = n;
    out.model.eigenvalues = std::move(eigenvalues);
    out.model.converged = true;
    return out;
}

ToeplitzCapacity toeplitz_capacity_detail(std::span<const double> r, std::size_t n, double gamma, double lambda) {
    auto model = toeplitz_model(r, n);
    auto out = eigenvalue_capacity(model.eigenvalues, gamma, lambda);
    out.model = std::move(model);
    return out;
}

double toeplitz_capacity(std::span<const double> r, std::size_t n, double gamma, double lambda) {
    return toeplitz_capacity_detail(r, n, gamma, lambda).capacity;
}

SzegoTable szego_convergence(std::span<const double> r, double gamma, double lambda,
                             std::span<const std::size_t> n_list, std::size_t grid) {
    if (n_list.empty()) throw DomainError("szego: n list is empty");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1]) throw DomainError("szego: n list must be increasing");

    SpectralSpec spec{AutocorrPsd{std::vector<double>(r.begin(), r.end())}, Constraints{gamma, lambda}};
    SzegoTable table;
    table.c_infinity = colored_capacity(spec, grid).random;
    for (std::size_t n : n_list) {
        SzegoRow row;
        row.n = n;
        row.c_n = toeplitz_capacity(r, n, gamma, lambda);
        row.gap = std::abs(row.c_n - table.c_infinity);
        if (!table.rows.empty() && row.gap > 1.1 * table.rows.back().gap + 1e-12) table.monotone = false;
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace avc
