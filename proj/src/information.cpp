#include "avc/information.hpp"

#include <cmath>
#include <numbers>

#include "avc/errors.hpp"

namespace avc {

template <typename Tag>
bool Conditional<Tag>::is_valid(double tol) const {
    for (std::size_t r = 0; r < rows_; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) {
            const double v = (*this)(r, c);
            if (!(v >= -tol)) return false;
            sum += v;
        }
        if (std::abs(sum - 1.0) > tol) return false;
    }
    return true;
}

template class Conditional<InputTag>;
template class Conditional<StateTag>;

namespace {

constexpr double kTiny = 1e-300;

void check_shapes(const DiscreteAVCSpec& spec, std::size_t nt, const ConditionalInput& p, const ConditionalState& q) {
    if (nt != spec.nt || p.rows() != spec.nt || q.rows() != spec.nt || p.cols() != spec.nx || q.cols() != spec.ns)
        throw DimensionMismatch("mutual information: distribution shapes do not match the kernel");
}

// V(y|x) = sum_s q(s) W(y|x,s,t) and P(y) = sum_x p(x) V(y|x) for one parameter value.
void induced_channel(const DiscreteAVCSpec& spec, std::size_t t, const ConditionalInput& p,
                     const ConditionalState& q, std::vector<double>& v, std::vector<double>& py) {
    v.assign(spec.nx * spec.ny, 0.0);
    py.assign(spec.ny, 0.0);
    for (std::size_t x = 0; x < spec.nx; ++x) {
        for (std::size_t s = 0; s < spec.ns; ++s) {
            const double qs = q(t, s);
            if (qs == 0.0) continue;
            for (std::size_t y = 0; y < spec.ny; ++y) v[x * spec.ny + y] += qs * spec.w(t, x, s, y);
        }
        for (std::size_t y = 0; y < spec.ny; ++y) py[y] += p(t, x) * v[x * spec.ny + y];
    }
}

}  // namespace

StateChannel slice(const DiscreteAVCSpec& spec, std::size_t t) {
    StateChannel ch{spec.nx, spec.ns, spec.ny, {}};
    ch.w.reserve(spec.nx * spec.ns * spec.ny);
    for (std::size_t x = 0; x < spec.nx; ++x)
        for (std::size_t s = 0; s < spec.ns; ++s)
            for (std::size_t y = 0; y < spec.ny; ++y) ch.w.push_back(spec.w(t, x, s, y));
    return ch;
}

double binary_entropy(double x) noexcept {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double binary_conv(double a, double b) noexcept { return (1.0 - a) * b + a * (1.0 - b); }

double mutual_info_cond(std::span<const double> param_type, const ConditionalInput& p, const ConditionalState& q,
                        const DiscreteAVCSpec& spec) {
    check_shapes(spec, param_type.size(), p, q);
    std::vector<double> v, py;
    double total = 0.0;
    for (std::size_t t = 0; t < spec.nt; ++t) {
        if (param_type[t] == 0.0) continue;
        induced_channel(spec, t, p, q, v, py);
        double it = 0.0;
        for (std::size_t x = 0; x < spec.nx; ++x) {
            const double px = p(t, x);
            if (px == 0.0) continue;
            for (std::size_t y = 0; y < spec.ny; ++y) {
                const double vy = v[x * spec.ny + y];
                if (vy > 0.0) it += px * vy * std::log2(vy / py[y]);
            }
        }
        total += param_type[t] * it;
    }
    return std::max(0.0, total);
}

double mutual_info_cond(const DiscreteAVCSpec& spec, const ConditionalInput& p, const ConditionalState& q) {
    return mutual_info_cond(spec.param_type, p, q, spec);
}

InfoWithGradient mutual_info_gradient(const DiscreteAVCSpec& spec, const ConditionalInput& p,
                                      const ConditionalState& q, bool want_p, bool want_q) {
    check_shapes(spec, spec.param_type.size(), p, q);
    InfoWithGradient out;
    if (want_p) out.grad_p.assign(spec.nt * spec.nx, 0.0);
    if (want_q) out.grad_q.assign(spec.nt * spec.ns, 0.0);
    std::vector<double> v, py, log_ratio(spec.nx * spec.ny);
    for (std::size_t t = 0; t < spec.nt; ++t) {
        const double pt = spec.param_type[t];
        if (pt == 0.0) continue;
        induced_channel(spec, t, p, q, v, py);
        for (std::size_t x = 0; x < spec.nx; ++x)
            for (std::size_t y = 0; y < spec.ny; ++y)
                log_ratio[x * spec.ny + y] = std::log2(std::max(v[x * spec.ny + y], kTiny) / std::max(py[y], kTiny));
        double it = 0.0;
        for (std::size_t x = 0; x < spec.nx; ++x) {
            double divergence = 0.0;
            for (std::size_t y = 0; y < spec.ny; ++y) {
                const double vy = v[x * spec.ny + y];
                if (vy > 0.0) divergence += vy * log_ratio[x * spec.ny + y];
            }
            it += p(t, x) * divergence;
            if (want_p) out.grad_p[t * spec.nx + x] = pt * (divergence - std::numbers::log2e);
        }
        out.value += pt * it;
        if (want_q) {
            for (std::size_t s = 0; s < spec.ns; ++s) {
                double g = 0.0;
                for (std::size_t x = 0; x < spec.nx; ++x) {
                    const double px = p(t, x);
                    if (px == 0.0) continue;
                    for (std::size_t y = 0; y < spec.ny; ++y) {
                        const double w = spec.w(t, x, s, y);
                        if (w > 0.0) g += px * w * log_ratio[x * spec.ny + y];
                    }
                }
                out.grad_q[t * spec.ns + s] = pt * g;
            }
        }
    }
    out.value = std::max(0.0, out.value);
    return out;
}

double expected_input_cost(const DiscreteAVCSpec& spec, const ConditionalInput& p) {
    double c = 0.0;
    for (std::size_t t = 0; t < spec.nt; ++t)
        for (std::size_t x = 0; x < spec.nx; ++x) c += spec.param_type[t] * p(t, x) * spec.input_cost[x];
    return c;
}

double expected_state_cost(const DiscreteAVCSpec& spec, const ConditionalState& q) {
    double c = 0.0;
    for (std::size_t t = 0; t < spec.nt; ++t)
        for (std::size_t s = 0; s < spec.ns; ++s) c += spec.param_type[t] * q(t, s) * spec.state_cost[s];
    return c;
}

}  // namespace avc
