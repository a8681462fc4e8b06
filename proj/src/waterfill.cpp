#include "avc/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "avc/errors.hpp"
#include "avc/rng.hpp"
#include "avc/units.hpp"

namespace avc {

namespace {

constexpr double kVolumeTol = 1e-12;
constexpr int kMaxBisection = 200;

bool receives_water(double floor, double weight) {
    return std::isfinite(floor) && weight > 0.0;
}

double filled_volume(std::span<const double> floor, std::span<const double> weight, double level) {
    double v = 0.0;
    for (std::size_t j = 0; j < floor.size(); ++j)
        if (receives_water(floor[j], weight[j])) v += weight[j] * pos(level - floor[j]);
    return v;
}

// Exact level for the active set {floor < level}; falls back to the bisection value
// when rounding moved the candidate out of its consistent interval.
double polish(std::span<const double> floor, std::span<const double> weight, double volume, double level) {
    double wsum = 0.0, wfloor = 0.0;
    double active_max = -std::numeric_limits<double>::infinity();
    double inactive_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < floor.size(); ++j) {
        if (!receives_water(floor[j], weight[j])) continue;
        if (floor[j] < level) {
            wsum += weight[j];
            wfloor += weight[j] * floor[j];
            active_max = std::max(active_max, floor[j]);
        } else {
            inactive_min = std::min(inactive_min, floor[j]);
        }
    }
    if (wsum <= 0.0) return level;
    const double exact = (volume + wfloor) / wsum;
    if (exact < active_max || exact > inactive_min) return level;
    const double r_exact = std::abs(filled_volume(floor, weight, exact) - volume);
    const double r_level = std::abs(filled_volume(floor, weight, level) - volume);
    return r_exact <= r_level ? exact : level;
}

}  // namespace

double weighted_water_level(std::span<const double> floor, std::span<const double> weight, double volume) {
    if (floor.size() != weight.size()) throw DimensionMismatch("water level: floor and weight sizes differ");
    if (floor.empty()) throw DomainError("water level: empty floor");
    if (volume < 0.0) throw DomainError("water level: negative volume");

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    double wtotal = 0.0;
    for (std::size_t j = 0; j < floor.size(); ++j) {
        if (!receives_water(floor[j], weight[j])) continue;
        lo = std::min(lo, floor[j]);
        hi = std::max(hi, floor[j]);
        wtotal += weight[j];
    }
    if (wtotal <= 0.0) throw DomainError("water level: no entry can receive water");
    if (volume == 0.0) return lo;
    hi += volume / wtotal;

    double level = 0.5 * (lo + hi);
    for (int it = 0; it < kMaxBisection; ++it) {
        level = 0.5 * (lo + hi);
        if (!(lo < level && level < hi)) break;  // interval exhausted at double resolution
        const double filled = filled_volume(floor, weight, level);
        if (std::abs(filled - volume) <= kVolumeTol) break;
        if (filled < volume)
            lo = level;
        else
            hi = level;
    }
    return polish(floor, weight, volume, level);
}

double water_level(std::span<const double> floor, double volume) {
    const std::vector<double> ones(floor.size(), 1.0);
    return weighted_water_level(floor, ones, volume);
}

WaterfillAllocation double_waterfill(std::span<const double> sigma2, const Constraints& budgets) {
    const std::size_t d = sigma2.size();
    WaterfillAllocation out;
    out.beta = water_level(sigma2, budgets.lambda);
    out.n_star.resize(d);
    std::vector<double> combined(d);
    for (std::size_t j = 0; j < d; ++j) {
        out.n_star[j] = budgets.lambda > 0.0 ? pos(out.beta - sigma2[j]) : 0.0;
        combined[j] = out.n_star[j] + sigma2[j];
    }
    out.alpha = water_level(combined, budgets.gamma);
    out.p_star.resize(d);
    for (std::size_t j = 0; j < d; ++j)
        out.p_star[j] = budgets.gamma > 0.0 ? pos(out.alpha - combined[j]) : 0.0;
    return out;
}

WaterfillAllocation double_waterfill(const ParallelGaussianSpec& spec) {
    return double_waterfill(spec.sigma2, spec.constraints);
}

double product_payoff(std::span<const double> sigma2, std::span<const double> p, std::span<const double> n) {
    double c = 0.0;
    for (std::size_t j = 0; j < sigma2.size(); ++j) c += 0.5 * std::log2(1.0 + p[j] / (n[j] + sigma2[j]));
    return c;
}

double level_form_capacity(std::span<const double> sigma2, double alpha, double beta) {
    double c = 0.0;
    for (double s : sigma2) c += 0.5 * std::log2(std::max(alpha, s) / std::max(beta, s));
    return c;
}

double random_code_capacity_product(const ParallelGaussianSpec& spec) {
    const auto a = double_waterfill(spec);
    return product_payoff(spec.sigma2, a.p_star, a.n_star);
}

double deterministic_code_capacity_product(const ParallelGaussianSpec& spec) {
    if (spec.constraints.gamma <= spec.constraints.lambda) return 0.0;
    return random_code_capacity_product(spec);
}

ScalarCapacity scalar_capacity(double gamma, double lambda, double sigma2) {
    if (gamma < 0.0 || lambda < 0.0 || !(sigma2 > 0.0))
        throw DomainError("scalar capacity: need gamma, lambda >= 0 and sigma2 > 0");
    ScalarCapacity c;
    c.random = 0.5 * std::log2(1.0 + gamma / (sigma2 + lambda));
    c.deterministic = lambda < gamma ? c.random : 0.0;
    return c;
}

KKTReport verify_kkt(const ParallelGaussianSpec& spec, const WaterfillAllocation& allocation, double tol) {
    const std::size_t d = spec.d();
    if (allocation.n_star.size() != d || allocation.p_star.size() != d)
        throw DimensionMismatch("verify_kkt: allocation has " + std::to_string(allocation.n_star.size()) +
                                "/" + std::to_string(allocation.p_star.size()) + " entries for d = " +
                                std::to_string(d));
    KKTReport r;
    const double a = allocation.alpha, b = allocation.beta;
    r.theta = (a - b) / (a * b);
    const double total = std::accumulate(allocation.n_star.begin(), allocation.n_star.end(), 0.0);
    r.budget_residual = std::abs(total - spec.constraints.lambda);
    r.nonnegativity.resize(d);
    r.inequality.resize(d);
    r.slackness.resize(d);
    bool ok = r.budget_residual <= tol && std::isfinite(r.theta);
    for (std::size_t j = 0; j < d; ++j) {
        const double nj = allocation.n_star[j], pj = allocation.p_star[j];
        const double base = nj + spec.sigma2[j];
        const double ratio = pj / (base * (base + pj));
        r.nonnegativity[j] = pos(-nj);
        r.inequality[j] = pos(ratio - r.theta);
        r.slackness[j] = std::abs((r.theta - ratio) * nj);
        ok = ok && r.nonnegativity[j] <= tol && r.inequality[j] <= tol && r.slackness[j] <= tol;
    }
    r.pass = ok;
    return r;
}

namespace {

// Point uniform on {x >= 0, sum x = total} from normalized exponential spacings.
void sample_simplex(std::mt19937_64& rng, double total, std::vector<double>& out) {
    std::exponential_distribution<double> exp1(1.0);
    double sum = 0.0;
    for (auto& v : out) {
        v = exp1(rng);
        sum += v;
    }
    for (auto& v : out) v = v / sum * total;
}

}  // namespace

SaddleReport saddle_check(const ParallelGaussianSpec& spec, const WaterfillAllocation& allocation,
                          std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw DomainError("saddle_check: trials must be >= 1");
    const std::size_t d = spec.d();
    if (allocation.n_star.size() != d || allocation.p_star.size() != d)
        throw DimensionMismatch("saddle_check: allocation does not match spec");
    const double value = product_payoff(spec.sigma2, allocation.p_star, allocation.n_star);

    // Fixed blocks keep the draws independent of the thread count.
    constexpr std::size_t kBlock = 256;
    const std::size_t blocks = (trials + kBlock - 1) / kBlock;
    std::vector<double> user_gain(trials), jammer_gain(trials);
    parallel_for(blocks, [&](std::size_t b) {
        std::vector<double> dev(d);
        auto rng_user = make_rng(seed, 1, b);
        auto rng_jam = make_rng(seed, 2, b);
        for (std::size_t i = b * kBlock; i < std::min(trials, (b + 1) * kBlock); ++i) {
            sample_simplex(rng_user, spec.constraints.gamma, dev);
            user_gain[i] = product_payoff(spec.sigma2, dev, allocation.n_star) - value;
            sample_simplex(rng_jam, spec.constraints.lambda, dev);
            jammer_gain[i] = value - product_payoff(spec.sigma2, allocation.p_star, dev);
        }
    });
    SaddleReport r;
    r.max_user_gain = *std::max_element(user_gain.begin(), user_gain.end());
    r.max_jammer_gain = *std::max_element(jammer_gain.begin(), jammer_gain.end());
    return r;
}

double gaussian_symm_cost(std::span<const double> input_power) {
    return std::accumulate(input_power.begin(), input_power.end(), 0.0);
}

}  // namespace avc
