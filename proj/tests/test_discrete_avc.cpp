#include "avc/bsc_example.hpp"
#include "avc/discrete_avc.hpp"
#include "avc/errors.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace avc;

namespace {

// Independent mutual information for one binary-input slice averaged over states q.
double slice_info(const DiscreteAVCSpec& spec, std::size_t t, const std::vector<double>& p,
                  const std::vector<double>& q) {
    std::vector<double> v(spec.nx * spec.ny, 0.0), py(spec.ny, 0.0);
    for (std::size_t x = 0; x < spec.nx; ++x)
        for (std::size_t s = 0; s < spec.ns; ++s)
            for (std::size_t y = 0; y < spec.ny; ++y) v[x * spec.ny + y] += q[s] * spec.w(t, x, s, y);
    for (std::size_t x = 0; x < spec.nx; ++x)
        for (std::size_t y = 0; y < spec.ny; ++y) py[y] += p[x] * v[x * spec.ny + y];
    double info = 0.0;
    for (std::size_t x = 0; x < spec.nx; ++x)
        for (std::size_t y = 0; y < spec.ny; ++y) {
            const double a = p[x] * v[x * spec.ny + y];
            if (a > 0.0) info += a * std::log2(v[x * spec.ny + y] / py[y]);
        }
    return info;
}

// max over p(1) in [p_lo, p_hi] of min over q(1) in [0, q_hi] on a fine grid, single binary slice.
double brute_maxmin(const DiscreteAVCSpec& spec, double p_lo, double p_hi, double q_hi, int steps) {
    double best = -1.0;
    for (int i = 0; i <= steps; ++i) {
        const double a = p_lo + (p_hi - p_lo) * i / steps;
        double worst = 1e9;
        for (int k = 0; k <= steps; ++k) {
            const double b = q_hi * k / steps;
            worst = std::min(worst, slice_info(spec, 0, {1 - a, a}, {1 - b, b}));
        }
        best = std::max(best, worst);
    }
    return best;
}

// s = 0 passes x through BSC(eps); s = 1 forces y = 1.
DiscreteAVCSpec stuck_at_one(double eps, double gamma, double lambda) {
    DiscreteAVCSpec spec;
    spec.nx = spec.ns = spec.ny = 2;
    spec.nt = 1;
    spec.kernel = {1 - eps, eps, 0.0, 1.0, eps, 1 - eps, 0.0, 1.0};
    spec.param_type = {1.0};
    spec.input_cost = {0.0, 1.0};
    spec.state_cost = {0.0, 1.0};
    spec.constraints = {gamma, lambda};
    return spec;
}

DiscreteAVCSpec identity_spec() {
    return load_spec_as<DiscreteAVCSpec>(test::data("identity.json"), SpecKind::Discrete);
}

}  // namespace

TEST_SUITE("discrete_avc") {

TEST_CASE("additive binary slice is symmetrized by copying the input") {
    const auto w = slice(bsc_spec(0.2, 0.3, 0.5, 0.25), 0);
    const auto j = find_symmetrizer(w);
    REQUIRE(j);
    CHECK(j->residual <= 1e-8);
    CHECK(symmetrization_residual(w, std::vector<double>{1, 0, 0, 1}) <= 1e-15);
    CHECK(symmetrization_residual(w, std::vector<double>{1, 0, 1, 0}) > 0.1);
}

TEST_CASE("noiseless channel ignoring the state is not symmetrizable") {
    const auto spec = identity_spec();
    const auto w = slice(spec, 0);
    CHECK_FALSE(find_symmetrizer(w));
    const std::vector<double> p = {0.5, 0.5};
    CHECK(min_symm_cost(w, p, spec.state_cost).cost == kInfiniteCost);
    CHECK(nonsymmetrizable_parameters(spec) == std::vector<std::size_t>{0});
    const auto th = symm_threshold(spec);
    CHECK(th.value == kInfiniteCost);
    const auto det = deterministic_capacity_fixed_params(spec);
    CHECK(det.branch == DeterministicCapacity::Branch::Positive);
    CHECK(det.value == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("minimal symmetrization cost of the additive slice") {
    const auto spec = bsc_spec(0.1, 0.3, 0.5, 0.25);
    const auto w = slice(spec, 1);
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 30; ++rep) {
        const auto p = test::random_pmf(2, rng);
        const auto c = min_symm_cost(w, p, spec.state_cost);
        CHECK(std::abs(c.cost - std::min(p[0], p[1])) <= 1e-8);
        REQUIRE(c.kernel);
        CHECK(c.kernel->residual <= 1e-8);
    }
}

TEST_CASE("symmetrization cost of a stuck-at channel") {
    const double eps = 0.1;
    const auto spec = stuck_at_one(eps, 1.0, 0.6);
    const auto w = slice(spec, 0);
    const std::vector<double> p = {0.4, 0.6};
    const auto c = min_symm_cost(w, p, spec.state_cost);
    CHECK(c.cost == doctest::Approx(0.6 * (1 - 2 * eps) / (1 - eps)).epsilon(1e-8));
    REQUIRE(c.kernel);
    CHECK_FALSE(c.kernel->zero_one);
    CHECK(symm_threshold(spec).value == doctest::Approx((1 - 2 * eps) / (1 - eps)).epsilon(1e-7));
}

TEST_CASE("threshold of the two-slice example") {
    const auto spec = bsc_spec(0.25, 5.0 / 12.0, 5.0 / 16.0, 0.25);
    ConditionalInput p(2, 2, {11.0 / 16, 5.0 / 16, 11.0 / 16, 5.0 / 16});
    CHECK(symm_cost_profile(spec, p) == doctest::Approx(5.0 / 16.0).epsilon(1e-9));
    const auto th = symm_threshold(spec);
    CHECK(std::abs(th.value - 5.0 / 16.0) <= 1e-6);
    CHECK(expected_input_cost(spec, th.argmax) <= 5.0 / 16.0 + 1e-9);
}

TEST_CASE("single slice capacity has a closed form") {
    const auto spec = load_spec_as<DiscreteAVCSpec>(test::data("bsc_single.json"), SpecKind::Discrete);
    const auto r = random_capacity_fixed_params(spec);
    const double expected = 1.0 - test::h2(test::conv(0.25, 0.25));
    CHECK(r.value == doctest::Approx(expected).epsilon(1e-6));
    CHECK(r.gap <= 1e-5);
    CHECK(r.value == doctest::Approx(brute_maxmin(spec, 0.0, 0.5, 0.25, 400)).epsilon(1e-4));
}

TEST_CASE("solver output is a saddle point") {
    const auto spec = load_spec_as<DiscreteAVCSpec>(test::data("bsc_pair.json"), SpecKind::Discrete);
    const auto r = random_capacity_fixed_params(spec);
    std::mt19937_64 rng(21);
    for (int k = 0; k < 300; ++k) {
        ConditionalInput p(2, 2);
        ConditionalState q(2, 2);
        for (std::size_t t = 0; t < 2; ++t) {
            const auto a = test::random_pmf(2, rng), b = test::random_pmf(2, rng);
            p(t, 0) = a[0], p(t, 1) = a[1];
            q(t, 0) = b[0], q(t, 1) = b[1];
        }
        if (expected_input_cost(spec, p) <= spec.constraints.gamma)
            CHECK(mutual_info_cond(spec, p, r.q) <= r.value + 1e-5);
        if (expected_state_cost(spec, q) <= spec.constraints.lambda)
            CHECK(mutual_info_cond(spec, r.p, q) >= r.value - 1e-5);
    }
}

TEST_CASE("capacity decreases with the jammer budget") {
    auto spec = load_spec_as<DiscreteAVCSpec>(test::data("bsc_pair.json"), SpecKind::Discrete);
    double prev = 1e9;
    for (double lambda : {0.05, 0.15, 0.3, 0.45}) {
        spec.constraints.lambda = lambda;
        const double v = random_capacity_fixed_params(spec).value;
        CHECK(v <= prev + 1e-7);
        prev = v;
    }
}

TEST_CASE("grid oracle brackets the solver") {
    const auto spec = load_spec_as<DiscreteAVCSpec>(test::data("bsc_pair.json"), SpecKind::Discrete);
    const auto g = grid_oracle(spec, 40);
    const auto r = random_capacity_fixed_params(spec);
    CHECK(std::abs(g.value - r.value) <= g.slack);
    DiscreteAVCSpec big = spec;
    big.nt = 3;
    big.kernel.insert(big.kernel.end(), spec.kernel.begin(), spec.kernel.begin() + 8);
    big.param_type = {0.3, 0.3, 0.4};
    CHECK_THROWS_AS(grid_oracle(big, 10), DomainError);
}

TEST_CASE("per-parameter decomposition agrees with the joint solver") {
    const auto spec = load_spec_as<DiscreteAVCSpec>(test::data("bsc_pair.json"), SpecKind::Discrete);
    const auto d = per_parameter_decomposition(spec);
    CHECK(std::abs(d.value - random_capacity_fixed_params(spec).value) <= 2e-3);
    double omega = 0.0, lambda = 0.0;
    for (std::size_t t = 0; t < 2; ++t) {
        omega += spec.param_type[t] * d.omega[t];
        lambda += spec.param_type[t] * d.lambda[t];
    }
    CHECK(omega <= spec.constraints.gamma + 1e-9);
    CHECK(lambda <= spec.constraints.lambda + 1e-9);
}

TEST_CASE("deterministic capacity branches") {
    auto spec = load_spec_as<DiscreteAVCSpec>(test::data("bsc_single.json"), SpecKind::Discrete);
    spec.constraints = {0.2, 0.3};
    const auto zero = deterministic_capacity_fixed_params(spec);
    CHECK(zero.branch == DeterministicCapacity::Branch::Zero);
    CHECK(zero.value == 0.0);
    spec.constraints = {0.4, 0.1};
    const auto pos = deterministic_capacity_fixed_params(spec);
    CHECK(pos.branch == DeterministicCapacity::Branch::Positive);
    CHECK(pos.value <= random_capacity_fixed_params(spec).value + 1e-6);
    CHECK(pos.value > 0.0);
}

TEST_CASE("binding symmetrizability constraint lowers the deterministic value") {
    const auto spec = stuck_at_one(0.1, 1.0, 0.6);
    const auto det = deterministic_capacity_fixed_params(spec);
    const double random = random_capacity_fixed_params(spec).value;
    REQUIRE(det.branch == DeterministicCapacity::Branch::Positive);
    CHECK(det.value < random - 1e-3);
    // Feasible inputs satisfy p(1) (1 - 2 eps) / (1 - eps) >= lambda.
    const double p_lo = 0.6 * 0.9 / 0.8;
    CHECK(det.value == doctest::Approx(brute_maxmin(spec, p_lo, 1.0, 0.6, 400)).epsilon(1e-3));
}

}
