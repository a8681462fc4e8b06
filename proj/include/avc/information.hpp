#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "avc/channel_model.hpp"

namespace avc {

/// Row-stochastic matrix indexed [t][symbol]. The tag keeps p(x|t) and q(s|t) apart.
template <typename Tag>
class Conditional {
public:
    Conditional() = default;
    Conditional(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
    Conditional(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {}

    static Conditional uniform(std::size_t rows, std::size_t cols) {
        return Conditional(rows, cols, std::vector<double>(rows * cols, 1.0 / static_cast<double>(cols)));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<double> flat() noexcept { return data_; }
    std::span<const double> flat() const noexcept { return data_; }

    /// Rows are pmfs within tol.
    bool is_valid(double tol = 1e-12) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

struct InputTag {};
struct StateTag {};
using ConditionalInput = Conditional<InputTag>;  // p(x|t)
using ConditionalState = Conditional<StateTag>;  // q(s|t)

extern template class Conditional<InputTag>;
extern template class Conditional<StateTag>;

/// One parameter slice W(y|x,s) of a discrete AVC.
struct StateChannel {
    std::size_t nx = 0, ns = 0, ny = 0;
    std::vector<double> w;  // [x][s][y]

    double operator()(std::size_t x, std::size_t s, std::size_t y) const noexcept {
        return w[(x * ns + s) * ny + y];
    }
};

StateChannel slice(const DiscreteAVCSpec& spec, std::size_t t);

/// h(x) in bits.
double binary_entropy(double x) noexcept;

/// a * b = (1 - a) b + a (1 - b).
double binary_conv(double a, double b) noexcept;

/// I_q(X;Y|T) in bits with P(y|x,t) = sum_s q(s|t) W(y|x,s,t).
double mutual_info_cond(std::span<const double> param_type, const ConditionalInput& p, const ConditionalState& q,
                        const DiscreteAVCSpec& spec);
double mutual_info_cond(const DiscreteAVCSpec& spec, const ConditionalInput& p, const ConditionalState& q);

struct InfoWithGradient {
    double value = 0.0;
    std::vector<double> grad_p;  // d I / d p(x|t)
    std::vector<double> grad_q;  // d I / d q(s|t)
};

InfoWithGradient mutual_info_gradient(const DiscreteAVCSpec& spec, const ConditionalInput& p,
                                      const ConditionalState& q, bool want_p = true, bool want_q = true);

double expected_input_cost(const DiscreteAVCSpec& spec, const ConditionalInput& p);
double expected_state_cost(const DiscreteAVCSpec& spec, const ConditionalState& q);

}  // namespace avc
