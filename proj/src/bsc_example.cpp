#include "avc/bsc_example.hpp"

#include <algorithm>

#include "avc/errors.hpp"
#include "avc/information.hpp"

namespace avc {

DiscreteAVCSpec bsc_spec(double eps0, double eps1, double gamma, double lambda) {
    DiscreteAVCSpec spec;
    spec.nx = spec.ns = spec.nt = spec.ny = 2;
    spec.kernel.resize(16);
    const double eps[2] = {eps0, eps1};
    for (std::size_t t = 0; t < 2; ++t)
        for (std::size_t x = 0; x < 2; ++x)
            for (std::size_t s = 0; s < 2; ++s)
                for (std::size_t y = 0; y < 2; ++y)
                    spec.kernel[spec.index(t, x, s, y)] = y == (x ^ s) ? 1.0 - eps[t] : eps[t];
    spec.param_type = {0.5, 0.5};
    spec.input_cost = {0.0, 1.0};
    spec.state_cost = {0.0, 1.0};
    spec.constraints = {gamma, lambda};
    validate(spec);
    return spec;
}

double c_tilde(double omega, double lambda, double eps) {
    if (lambda >= 0.5 || omega <= lambda) return 0.0;
    const double noise = binary_conv(lambda, eps);
    if (omega >= 0.5) return 1.0 - binary_entropy(noise);
    return binary_entropy(binary_conv(omega, noise)) - binary_entropy(noise);
}

BscExampleReport bsc_example(double eps0, double eps1, double gamma, double lambda, bool with_numeric,
                             const SolverOptions& options) {
    if (!(0.0 < eps0 && eps0 < eps1 && eps1 < 0.5))
        throw DomainError("bsc example needs 0 < eps0 < eps1 < 1/2");
    BscExampleReport r;
    r.eps = {eps0, eps1};
    r.constraints = {gamma, lambda};
    const auto spec = bsc_spec(eps0, eps1, gamma, lambda);
    r.threshold = symm_threshold(spec).value;

    // The jammer equalizes the effective crossover lambda_t * eps_t across the two slices.
    double inv = 0.0, shifted = 0.0;
    for (double e : r.eps) {
        inv += 1.0 / (1.0 - 2.0 * e);
        shifted += e / (1.0 - 2.0 * e);
    }
    const double common = (2.0 * lambda + shifted) / inv;
    for (std::size_t t = 0; t < 2; ++t) {
        r.omega[t] = gamma;
        r.lambda[t] = std::clamp((common - r.eps[t]) / (1.0 - 2.0 * r.eps[t]), 0.0, 1.0);
    }

    for (std::size_t t = 0; t < 2; ++t) {
        const double noise = binary_conv(r.lambda[t], r.eps[t]);
        r.c_joint += 0.5 * (binary_entropy(binary_conv(r.omega[t], noise)) - binary_entropy(noise));
        r.c_split += 0.5 * c_tilde(r.omega[t], r.lambda[t], r.eps[t]);
    }
    if (r.threshold < lambda) r.c_joint = 0.0;
    r.superadditive = r.c_joint > r.c_split;
    if (with_numeric) r.numeric = deterministic_capacity_fixed_params(spec, options).value;
    return r;
}

}  // namespace avc
