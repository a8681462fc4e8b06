#include "avc/fading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "avc/errors.hpp"
#include "avc/projection.hpp"
#include "avc/waterfill.hpp"
#include "minmax_solver.hpp"

namespace avc {

namespace {

constexpr double kDecisionMargin = 1e-6;

double weighted_sum(const std::vector<double>& w, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * v[i];
    return s;
}

std::vector<double> squared(const FadingSpec& spec) {
    std::vector<double> out;
    for (double t : spec.theta) out.push_back(t * t);
    return out;
}

// Maximizer over the user's set; `constrained` adds E T^2 omega >= lambda.
std::vector<double> user_response(const FadingSpec& spec, const std::vector<double>& lambda, bool constrained) {
    auto omega = fading_user_response(spec, lambda);
    const auto t2 = squared(spec);
    if (!constrained || weighted_sum(spec.param_type, [&] {
            std::vector<double> v(omega.size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = t2[i] * omega[i];
            return v;
        }()) >= spec.constraints.lambda)
        return omega;

    HalfSpace cut{std::vector<double>(t2.size()), spec.constraints.lambda};
    for (std::size_t i = 0; i < t2.size(); ++i) cut.a[i] = spec.param_type[i] * t2[i];
    const std::vector<HalfSpace> cuts{cut};
    const detail::Projector project = [&](std::span<double> x) {
        dykstra(x, [&](std::span<double> z) { project_box_budget(z, spec.param_type, spec.constraints.gamma); },
                cuts);
    };
    const detail::Oracle oracle = [&](const std::vector<double>& w) {
        std::vector<double> g(w.size(), 0.0);
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double u = lambda[i] + spec.sigma2;
            g[i] = -spec.param_type[i] * 0.5 * std::numbers::log2e * t2[i] / (u + t2[i] * w[i]);
        }
        return std::make_pair(-fading_payoff(spec, w, lambda), g);
    };
    return detail::projected_descent(omega, oracle, project, 1e-12, 20000).x;
}

FadingCapacity solve(const FadingSpec& spec, bool constrained, double gap_tolerance) {
    const auto t2 = squared(spec);
    const std::size_t n = spec.theta.size();
    const detail::Projector project = [&](std::span<double> x) {
        project_box_budget(x, spec.param_type, spec.constraints.lambda);
    };
    // Danskin: the gradient in lambda is taken at the user's maximizer.
    const detail::Oracle oracle = [&](const std::vector<double>& lam) {
        const auto omega = user_response(spec, lam, constrained);
        std::vector<double> g(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = lam[i] + spec.sigma2;
            g[i] = -spec.param_type[i] * 0.5 * std::numbers::log2e * t2[i] * omega[i] / (u * (u + t2[i] * omega[i]));
        }
        return std::make_pair(fading_payoff(spec, omega, lam), g);
    };
    const auto start = fading_jammer_response(spec, std::vector<double>(n, spec.constraints.gamma));
    const auto res = detail::projected_descent(start, oracle, project, 1e-11, 5000);

    FadingCapacity out;
    out.iterations = res.iterations;
    out.allocation.lambda = res.x;
    out.allocation.omega = user_response(spec, res.x, constrained);
    out.upper = fading_payoff(spec, out.allocation.omega, out.allocation.lambda);
    out.lower = fading_payoff(spec, out.allocation.omega, fading_jammer_response(spec, out.allocation.omega));
    out.gap = std::max(0.0, out.upper - out.lower);
    out.value = 0.5 * (out.upper + out.lower);
    if (!(out.gap <= gap_tolerance)) throw SolverDidNotConverge("fading min-max bounds did not meet", out.gap);
    return out;
}

}  // namespace

double fading_payoff(const FadingSpec& spec, const std::vector<double>& omega, const std::vector<double>& lambda) {
    if (omega.size() != spec.theta.size() || lambda.size() != spec.theta.size())
        throw DimensionMismatch("fading allocation must have one entry per coefficient");
    double v = 0.0;
    for (std::size_t i = 0; i < spec.theta.size(); ++i) {
        const double t2 = spec.theta[i] * spec.theta[i];
        v += spec.param_type[i] * 0.5 * std::log2(1.0 + t2 * omega[i] / (lambda[i] + spec.sigma2));
    }
    return v;
}

std::vector<double> fading_user_response(const FadingSpec& spec, const std::vector<double>& lambda) {
    const std::size_t n = spec.theta.size();
    std::vector<double> floor(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t2 = spec.theta[i] * spec.theta[i];
        floor[i] = t2 == 0.0 ? std::numeric_limits<double>::infinity() : (lambda[i] + spec.sigma2) / t2;
    }
    std::vector<double> omega(n, 0.0);
    const bool any = std::any_of(floor.begin(), floor.end(), [](double f) { return std::isfinite(f); });
    if (!any) return omega;
    const double level = weighted_water_level(floor, spec.param_type, spec.constraints.gamma);
    for (std::size_t i = 0; i < n; ++i)
        if (spec.param_type[i] > 0.0 && std::isfinite(floor[i])) omega[i] = std::max(0.0, level - floor[i]);
    return omega;
}

std::vector<double> fading_jammer_response(const FadingSpec& spec, const std::vector<double>& omega) {
    const std::size_t n = spec.theta.size();
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = spec.param_type[i] > 0.0 ? spec.theta[i] * spec.theta[i] * omega[i] : 0.0;
    // Stationarity gives u (u + a) = a / c for the total noise u = lambda + sigma^2.
    auto alloc = [&](double c) {
        std::vector<double> lam(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] > 0.0) {
                const double u = 0.5 * (-a[i] + std::sqrt(a[i] * a[i] + 4.0 * a[i] / c));
                lam[i] = std::max(0.0, u - spec.sigma2);
            }
        return lam;
    };
    const double budget = spec.constraints.lambda;
    if (budget <= 0.0 || std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; }))
        return std::vector<double>(n, 0.0);
    // Spend is decreasing in c; bisect geometrically.
    double lo = 1e-300, hi = 1.0;
    while (weighted_sum(spec.param_type, alloc(hi)) > budget) hi *= 2.0;
    for (int it = 0; it < 400; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (weighted_sum(spec.param_type, alloc(mid)) > budget)
            lo = mid;
        else
            hi = mid;
        if (hi / lo - 1.0 < 1e-15) break;
    }
    return alloc(hi);
}

FadingCapacity fading_random_capacity(const FadingSpec& spec, double gap_tolerance) {
    validate(spec);
    return solve(spec, false, gap_tolerance);
}

FadingDetCapacity fading_det_capacity(const FadingSpec& spec, double gap_tolerance) {
    validate(spec);
    FadingDetCapacity out;
    double t2max = 0.0;
    for (std::size_t i = 0; i < spec.theta.size(); ++i)
        if (spec.param_type[i] > 0.0) t2max = std::max(t2max, spec.theta[i] * spec.theta[i]);
    out.threshold = spec.constraints.gamma * t2max;
    const double lambda = spec.constraints.lambda;
    if (out.threshold < lambda - kDecisionMargin) return out;
    out.boundary = std::abs(out.threshold - lambda) <= kDecisionMargin;
    out.saddle = solve(spec, true, gap_tolerance);
    out.value = out.saddle.value;
    return out;
}

}  // namespace avc
