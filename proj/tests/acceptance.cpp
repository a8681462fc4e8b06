// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "avc/bsc_example.hpp"
#include "avc/discrete_avc.hpp"
#include "avc/jamming_sim.hpp"
#include "avc/spectral.hpp"
#include "avc/waterfill.hpp"

using namespace avc;
using Clock = std::chrono::steady_clock;

namespace {

std::string data(const std::string& name) { return std::string(AVC_TEST_DATA) + "/" + name; }

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double h2(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double conv(double a, double b) { return a * (1.0 - b) + b * (1.0 - a); }

double scalar_formula(double gamma, double lambda, double sigma2) {
    return 0.5 * std::log2(1.0 + gamma / (sigma2 + lambda));
}

// Collects failure reasons and a short summary for one criterion.
struct Outcome {
    std::vector<std::string> failures;
    std::string summary;

    void require(bool ok, const std::string& what) {
        if (!ok && failures.size() < 5) failures.push_back(what);
        if (!ok && failures.size() == 5) failures.push_back("...");
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<ParallelGaussianSpec> random_products() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> dim(1, 16);
    std::uniform_real_distribution<double> noise(0.1, 10.0), budget(0.1, 20.0);
    std::vector<ParallelGaussianSpec> specs(200);
    for (auto& s : specs) {
        s.sigma2.resize(static_cast<std::size_t>(dim(rng)));
        for (double& v : s.sigma2) v = noise(rng);
        s.constraints = {budget(rng), budget(rng)};
    }
    return specs;
}

Outcome ten_channel() {
    Outcome o;
    const std::vector<double> sigma2 = {5, 8, 3, 1.5, 2.5, 1.8, 3.2, 9, 4.5, 5.5};
    const std::vector<double> n_expected = {0, 0, 1, 2.5, 1.5, 2.2, 0.8, 0, 0, 0};
    const Constraints c{13.0, 8.0};
    (void)double_waterfill(sigma2, c);  // warm-up
    double best = 1e9;
    WaterfillAllocation a;
    for (int rep = 0; rep < 10; ++rep) {
        const auto t0 = Clock::now();
        a = double_waterfill(sigma2, c);
        best = std::min(best, seconds_since(t0));
    }
    o.require(std::abs(a.beta - 4.0) <= 1e-9, "beta = " + fmt(a.beta));
    o.require(std::abs(a.alpha - 6.0) <= 1e-9, "alpha = " + fmt(a.alpha));
    double total = 0.0;
    for (std::size_t j = 0; j < sigma2.size(); ++j) {
        o.require(std::abs(a.n_star[j] - n_expected[j]) <= 1e-9, "N*[" + std::to_string(j) + "]");
        const double p = std::max(0.0, 6.0 - std::max(4.0, sigma2[j]));
        o.require(std::abs(a.p_star[j] - p) <= 1e-9, "P*[" + std::to_string(j) + "]");
        total += a.p_star[j];
    }
    o.require(std::abs(total - 13.0) <= 1e-9, "sum P* = " + fmt(total));
    o.require(best < 1e-3, "runtime " + fmt(best) + " s");
    o.summary = "beta=" + fmt(a.beta) + " alpha=" + fmt(a.alpha) + " time=" + fmt(best * 1e3) + " ms";
    return o;
}

Outcome scalar_consistency() {
    Outcome o;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double g = u(rng), s = u(rng);
        const double l = (k % 10 == 0) ? g : u(rng);
        const ParallelGaussianSpec spec{{s}, {g, l}};
        const double c = random_code_capacity_product(spec);
        const double err = std::abs(c - scalar_formula(g, l, s));
        worst = std::max(worst, err);
        o.require(err <= 1e-12, "random capacity off by " + fmt(err));
        const double det = deterministic_code_capacity_product(spec);
        o.require((det == 0.0) == (l >= g), "deterministic switch at gamma=" + fmt(g) + " lambda=" + fmt(l));
    }
    o.summary = "max error " + fmt(worst);
    return o;
}

Outcome kkt_saddle(const std::vector<ParallelGaussianSpec>& specs) {
    Outcome o;
    const auto t0 = Clock::now();
    double user = 0.0, jammer = 0.0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto a = double_waterfill(specs[i]);
        const auto kkt = verify_kkt(specs[i], a, 1e-8);
        const double theta = (a.alpha - a.beta) / (a.alpha * a.beta);
        o.require(kkt.pass, "kkt fails on spec " + std::to_string(i));
        o.require(std::abs(kkt.theta - theta) <= 1e-12 * (1.0 + theta), "theta mismatch on spec " + std::to_string(i));
        const auto s = saddle_check(specs[i], a, 10000, 7 + i);
        user = std::max(user, s.max_user_gain);
        jammer = std::max(jammer, s.max_jammer_gain);
        o.require(s.max_user_gain <= 1e-7, "user gain " + fmt(s.max_user_gain) + " on spec " + std::to_string(i));
        o.require(s.max_jammer_gain <= 1e-7, "jammer gain " + fmt(s.max_jammer_gain) + " on spec " + std::to_string(i));
    }
    const double t = seconds_since(t0);
    o.require(t < 30.0, "runtime " + fmt(t) + " s");
    o.summary = "max gains user=" + fmt(user) + " jammer=" + fmt(jammer) + " time=" + fmt(t) + " s";
    return o;
}

Outcome level_identity(const std::vector<ParallelGaussianSpec>& specs) {
    Outcome o;
    double worst = 0.0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto a = double_waterfill(specs[i]);
        double level = 0.0;
        for (double s : specs[i].sigma2) level += 0.5 * std::log2(std::max(a.alpha, s) / std::max(a.beta, s));
        const double err = std::abs(product_payoff(specs[i].sigma2, a.p_star, a.n_star) - level);
        worst = std::max(worst, err);
        o.require(err <= 1e-9, "identity off by " + fmt(err) + " on spec " + std::to_string(i));
    }
    o.summary = "max error " + fmt(worst);
    return o;
}

Outcome colored_flat() {
    Outcome o;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.05, 10.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double s = u(rng), g = u(rng), l = u(rng);
        const SpectralSpec spec{AutocorrPsd{{s}}, {g, l}};
        const double err = std::abs(colored_capacity(spec, 4096).random - scalar_formula(g, l, s));
        worst = std::max(worst, err);
        o.require(err <= 1e-6, "flat colored capacity off by " + fmt(err));
    }
    o.summary = "max error " + fmt(worst);
    return o;
}

Outcome szego() {
    Outcome o;
    const auto spec = load_spec_as<SpectralSpec>(data("ar1.json"), SpecKind::Spectral);
    const auto r = autocorr_from_psd(spec, 1024);
    o.require(std::abs(r[1] - 0.5) <= 1e-15, "fixture is not rho = 0.5");
    const std::vector<std::size_t> ns = {64, 1024};
    const auto t0 = Clock::now();
    const auto table = szego_convergence(r, spec.constraints.gamma, spec.constraints.lambda, ns);
    const double t = seconds_since(t0);
    const double g64 = table.rows[0].gap, g1024 = table.rows[1].gap;
    o.require(g1024 < 1e-2, "gap at n=1024 is " + fmt(g1024));
    o.require(g1024 < g64, "gap did not shrink: " + fmt(g64) + " -> " + fmt(g1024));
    o.require(t < 60.0, "runtime " + fmt(t) + " s");

    const std::vector<std::size_t> flat_ns = {1, 2, 16, 64, 256, 1024};
    const std::vector<double> flat = {1.7};
    const auto ft = szego_convergence(flat, 2.0, 0.5, flat_ns);
    for (const auto& row : ft.rows) o.require(row.gap <= 1e-9, "flat gap " + fmt(row.gap) + " at n=" + std::to_string(row.n));
    o.summary = "gap(64)=" + fmt(g64) + " gap(1024)=" + fmt(g1024) + " time=" + fmt(t) + " s";
    return o;
}

// Independent check of the symmetrization equalities for a |X| x |S| kernel.
double own_residual(const StateChannel& w, const std::vector<double>& j) {
    double worst = 0.0;
    for (std::size_t a = 0; a < w.nx; ++a)
        for (std::size_t b = 0; b < w.nx; ++b)
            for (std::size_t y = 0; y < w.ny; ++y) {
                double lhs = 0.0, rhs = 0.0;
                for (std::size_t s = 0; s < w.ns; ++s) {
                    lhs += w(a, s, y) * j[b * w.ns + s];
                    rhs += w(b, s, y) * j[a * w.ns + s];
                }
                worst = std::max(worst, std::abs(lhs - rhs));
            }
    return worst;
}

Outcome symmetrizability() {
    Outcome o;
    const auto spec = bsc_spec(0.15, 0.3, 0.5, 0.25);
    const auto w = slice(spec, 0);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0, worst_res = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double a = u(rng);
        const std::vector<double> p = {a, 1.0 - a};
        const auto c = min_symm_cost(w, p, spec.state_cost);
        const double err = std::abs(c.cost - std::min(a, 1.0 - a));
        worst = std::max(worst, err);
        o.require(err <= 1e-8, "cost off by " + fmt(err));
        o.require(c.kernel.has_value(), "no kernel returned");
        if (c.kernel) {
            const double res = std::max(own_residual(w, c.kernel->j), c.kernel->residual);
            worst_res = std::max(worst_res, res);
            o.require(res <= 1e-8, "kernel residual " + fmt(res));
        }
    }
    const auto id = load_spec_as<DiscreteAVCSpec>(data("identity.json"), SpecKind::Discrete);
    o.require(!find_symmetrizer(slice(id, 0)).has_value(), "identity channel got a kernel");
    o.require(nonsymmetrizable_parameters(id) == std::vector<std::size_t>{0}, "identity channel not flagged");
    o.require(std::isinf(symm_threshold(id).value), "identity threshold is finite");
    o.summary = "max cost error " + fmt(worst) + " max residual " + fmt(worst_res);
    return o;
}

Outcome example_one() {
    Outcome o;
    const auto rep = bsc_example(0.25, 5.0 / 12.0, 5.0 / 16.0, 0.25);
    const double joint = h2(conv(5.0 / 16.0, 7.0 / 16.0)) - h2(7.0 / 16.0);
    o.require(std::abs(rep.threshold - 5.0 / 16.0) <= 1e-6, "L* = " + fmt(rep.threshold));
    o.require(std::abs(rep.c_joint - joint) <= 1e-9, "joint = " + fmt(rep.c_joint) + " expected " + fmt(joint));
    o.require(rep.c_split < rep.c_joint, "split " + fmt(rep.c_split) + " not below joint");
    o.require(rep.superadditive, "super-additivity flag is false");
    o.summary = "L*=" + fmt(rep.threshold) + " joint=" + fmt(rep.c_joint) + " split=" + fmt(rep.c_split);
    return o;
}

Outcome oracle_agreement() {
    Outcome o;
    std::ostringstream summary;
    for (const char* name : {"bsc_single.json", "bsc_pair.json", "bsc_example.json", "identity.json"}) {
        const auto t0 = Clock::now();
        const auto spec = load_spec_as<DiscreteAVCSpec>(data(name), SpecKind::Discrete);
        const auto grid = grid_oracle(spec, 100);
        const auto solver = random_capacity_fixed_params(spec);
        const auto split = per_parameter_decomposition(spec);
        const double t = seconds_since(t0);
        const double e1 = std::abs(solver.value - grid.value), e2 = std::abs(split.value - grid.value);
        o.require(e1 <= grid.slack, std::string(name) + ": solver off grid by " + fmt(e1) + " > slack " + fmt(grid.slack));
        o.require(e2 <= 2e-3, std::string(name) + ": decomposition off grid by " + fmt(e2));
        o.require(t < 120.0, std::string(name) + ": runtime " + fmt(t) + " s");
        summary << name << " " << fmt(solver.value) << "/" << fmt(grid.value) << "/" << fmt(split.value) << " ("
                << fmt(t) << " s) ";
    }
    o.summary = summary.str();
    return o;
}

Outcome phase_transition() {
    Outcome o;
    const auto t0 = Clock::now();
    SimConfig mimic;
    mimic.n = 256;
    mimic.rate = 4.0 / 256.0;  // M = 16
    mimic.gamma = 1.0;
    mimic.lambda = 1.0;
    mimic.sigma2 = 0.1;
    mimic.strategy = JammerStrategy::CodewordMimic;
    mimic.trials = 20000;
    mimic.seed = 7;
    SimConfig iid;
    iid.n = 512;
    iid.rate = 0.3;
    iid.gamma = 2.0;
    iid.lambda = 0.5;
    iid.sigma2 = 0.5;
    iid.strategy = JammerStrategy::IidGaussian;
    iid.trials = 5000;
    iid.seed = 7;

    const auto a = simulate(mimic), b = simulate(iid);
    o.require(message_count(mimic) == 16.0, "codebook size is not 16");
    o.require(a.error_rate >= 0.20, "mimic error rate " + fmt(a.error_rate));
    o.require(b.error_rate <= 0.05, "iid error rate " + fmt(b.error_rate));
    const auto a2 = simulate(mimic), b2 = simulate(iid);
    const auto same = [](const SimReport& x, const SimReport& y) {
        return x.errors == y.errors && x.trials == y.trials &&
               std::memcmp(&x.error_rate, &y.error_rate, sizeof(double)) == 0 &&
               std::memcmp(&x.half_width, &y.half_width, sizeof(double)) == 0;
    };
    o.require(same(a, a2) && same(b, b2), "reports differ between identical seeds");
    const double t = seconds_since(t0);
    o.require(t < 120.0, "runtime " + fmt(t) + " s");
    o.summary = "mimic=" + fmt(a.error_rate) + " iid=" + fmt(b.error_rate) + " time=" + fmt(t) + " s";
    return o;
}

}  // namespace

int main() {
    const auto specs = random_products();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"ten-channel double water filling", ten_channel},
        {"scalar consistency", scalar_consistency},
        {"KKT and saddle on random product specs", [&] { return kkt_saddle(specs); }},
        {"level-form identity", [&] { return level_identity(specs); }},
        {"colored-noise flat check", colored_flat},
        {"Szego convergence", szego},
        {"symmetrizability LP", symmetrizability},
        {"two-slice binary example", example_one},
        {"min-max oracle agreement", oracle_agreement},
        {"simulation phase transition", phase_transition},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.failures.push_back(std::string("threw: ") + e.what());
        }
        const bool pass = o.failures.empty();
        failed += pass ? 0 : 1;
        std::cout << (pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << o.summary;
        for (const auto& f : o.failures) std::cout << " | " << f;
        std::cout << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
