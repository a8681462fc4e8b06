#include "avc/jamming_sim.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "avc/errors.hpp"
#include "avc/rng.hpp"

namespace avc {

namespace {

enum Stream : std::uint64_t { kCodebook = 1, kTrial = 2 };

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

std::vector<double> sphere_point(std::size_t n, double radius, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(n);
    double r2 = 0.0;
    do {
        for (double& x : v) x = g(rng);
        r2 = norm2(v);
    } while (r2 == 0.0);
    const double scale = radius / std::sqrt(r2);
    for (double& x : v) x *= scale;
    return v;
}

std::vector<double> iid_state(std::size_t n, double lambda, std::mt19937_64& rng) {
    std::vector<double> s(n, 0.0);
    if (lambda <= 0.0) return s;
    std::normal_distribution<double> g(0.0, std::sqrt(0.99 * lambda));
    const double limit = static_cast<double>(n) * lambda;
    do {
        for (double& x : s) x = g(rng);
    } while (norm2(s) > limit);
    return s;
}

std::vector<double> rescaled(std::vector<double> v, double target_norm) {
    const double r = std::sqrt(norm2(v));
    if (r > 0.0)
        for (double& x : v) x *= target_norm / r;
    return v;
}

// P(<u, e> >= c) for u uniform on the unit sphere in R^n and a fixed unit vector e.
double cap_probability(std::size_t n, double c) {
    if (c >= 1.0) return 0.0;
    if (c <= -1.0) return 1.0;
    if (n == 1) return c > 0.0 ? 0.5 : (c == 0.0 ? 0.5 : 1.0);
    const double half = 0.5 * boost::math::ibeta(0.5 * (static_cast<double>(n) - 1.0), 0.5, 1.0 - c * c);
    return c >= 0.0 ? half : 1.0 - half;
}

void check(const SimConfig& c) {
    if (c.n < 1) throw ValidationError("n", "blocklength must be >= 1");
    if (c.trials < 1) throw ValidationError("trials", "need at least one trial");
    if (!(std::isfinite(c.rate) && c.rate >= 0.0)) throw ValidationError("rate", "must be finite and >= 0");
    if (!(std::isfinite(c.gamma) && c.gamma > 0.0)) throw ValidationError("gamma", "must be > 0");
    if (!(std::isfinite(c.lambda) && c.lambda >= 0.0)) throw ValidationError("lambda", "must be >= 0");
    if (!(std::isfinite(c.sigma2) && c.sigma2 >= 0.0)) throw ValidationError("sigma2", "must be >= 0");
}

}  // namespace

JammerStrategy parse_strategy(const std::string& name) {
    if (name == "iid" || name == "gaussian" || name == "IidGaussian") return JammerStrategy::IidGaussian;
    if (name == "mimic" || name == "CodewordMimic") return JammerStrategy::CodewordMimic;
    throw ValidationError("strategy", "expected iid or mimic, got '" + name + "'");
}

std::string to_string(JammerStrategy s) {
    return s == JammerStrategy::IidGaussian ? "IidGaussian" : "CodewordMimic";
}

Codebook gen_codebook(std::size_t n, std::size_t messages, double gamma, std::mt19937_64& rng) {
    if (messages < 2) throw ValidationError("M", "codebook needs at least two messages");
    if (n == 1 && messages > 2) throw ValidationError("M", "a one-dimensional sphere holds only two codewords");
    Codebook book;
    book.reserve(messages);
    const double radius = std::sqrt(static_cast<double>(n) * gamma);
    while (book.size() < messages) {
        auto x = sphere_point(n, radius, rng);
        // Continuous draws collide only when n = 1, where the sphere is two points.
        if (std::find(book.begin(), book.end(), x) == book.end()) book.push_back(std::move(x));
    }
    return book;
}

std::size_t min_dist_decode(const std::vector<double>& y, const Codebook& codebook) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < codebook.size(); ++m) {
        if (codebook[m].size() != y.size()) throw DimensionMismatch("decoder input and codeword lengths differ");
        double d = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double e = y[i] - codebook[m][i];
            d += e * e;
        }
        if (d < best_d) {
            best_d = d;
            best = m;
        }
    }
    return best;
}

std::vector<double> make_state(JammerStrategy strategy, const Codebook& codebook, double gamma, double lambda,
                               std::mt19937_64& rng) {
    const std::size_t n = codebook.front().size();
    if (strategy == JammerStrategy::IidGaussian) return iid_state(n, lambda, rng);
    std::uniform_int_distribution<std::size_t> pick(0, codebook.size() - 1);
    const auto& x = codebook[pick(rng)];
    if (lambda >= gamma) return x;
    return rescaled(x, std::sqrt(static_cast<double>(n) * lambda));
}

double message_count(const SimConfig& config) {
    check(config);
    const double m = std::round(std::exp2(static_cast<double>(config.n) * config.rate));
    if (!(m >= 2.0)) throw ValidationError("rate", "2^(n R) must round to at least 2 messages");
    return m;
}

SimReport simulate(const SimConfig& config) {
    const double messages = message_count(config);
    const std::size_t n = config.n;
    const double nd = static_cast<double>(n);
    SimReport report;
    report.trials = config.trials;
    report.strategy = config.strategy;
    report.log2_messages = std::log2(messages);
    report.explicit_codebook = messages <= kExplicitCodebookLimit;

    std::vector<unsigned char> error(config.trials, 0);
    if (report.explicit_codebook) {
        auto book_rng = make_rng(config.seed, kCodebook, 0);
        const auto book = gen_codebook(n, static_cast<std::size_t>(messages), config.gamma, book_rng);
        parallel_for(config.trials, [&](std::size_t trial) {
            auto rng = make_rng(config.seed, kTrial, trial);
            std::uniform_int_distribution<std::size_t> pick(0, book.size() - 1);
            const std::size_t m = pick(rng);
            auto y = make_state(config.strategy, book, config.gamma, config.lambda, rng);
            std::normal_distribution<double> noise(0.0, std::sqrt(config.sigma2));
            for (std::size_t i = 0; i < n; ++i) y[i] += book[m][i] + (config.sigma2 > 0.0 ? noise(rng) : 0.0);
            error[trial] = min_dist_decode(y, book) != m;
        });
    } else {
        // Random-codebook ensemble: competitors are independent uniform points on the power sphere,
        // so only the chance that at least one of M - 1 of them lands closer than the sent word matters.
        const double log_competitors = nd * config.rate * std::numbers::ln2 + std::log1p(-1.0 / messages);
        const double radius = std::sqrt(nd * config.gamma);
        parallel_for(config.trials, [&](std::size_t trial) {
            auto rng = make_rng(config.seed, kTrial, trial);
            const auto x = sphere_point(n, radius, rng);
            std::vector<double> s;
            if (config.strategy == JammerStrategy::IidGaussian)
                s = iid_state(n, config.lambda, rng);
            else
                s = sphere_point(n, std::sqrt(nd * std::min(config.gamma, config.lambda)), rng);
            std::normal_distribution<double> noise(0.0, std::sqrt(config.sigma2));
            std::vector<double> y(n);
            for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + s[i] + (config.sigma2 > 0.0 ? noise(rng) : 0.0);
            double d_sent = 0.0;
            for (std::size_t i = 0; i < n; ++i) d_sent += (y[i] - x[i]) * (y[i] - x[i]);
            const double ny = std::sqrt(norm2(y));
            // ||y - x'||^2 <= d_sent  <=>  <y, x'> >= (||y||^2 + n gamma - d_sent) / 2.
            const double c = ny > 0.0 ? (ny * ny + nd * config.gamma - d_sent) / (2.0 * ny * radius) : 0.0;
            const double p = cap_probability(n, c);
            double fail = 0.0;
            if (p >= 1.0)
                fail = 1.0;
            else if (p > 0.0)
                fail = -std::expm1(-std::exp(log_competitors + std::log(-std::log1p(-p))));
            std::uniform_real_distribution<double> u(0.0, 1.0);
            error[trial] = u(rng) < fail;
        });
    }
    for (unsigned char e : error) report.errors += e;
    const double t = static_cast<double>(config.trials);
    report.error_rate = static_cast<double>(report.errors) / t;
    report.half_width = 1.96 * std::sqrt(report.error_rate * (1.0 - report.error_rate) / t);
    return report;
}

}  // namespace avc
