#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace avc {

/// Dense symmetric matrix, row-major.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
    double* row(std::size_t i) noexcept { return a_.data() + i * n_; }

private:
    std::size_t n_;
    std::vector<double> a_;
};

struct JacobiOptions {
    double off_tolerance = 1e-10;  // relative to the Frobenius norm of the input
    int max_sweeps = 30;
};

struct JacobiResult {
    std::vector<double> eigenvalues;  // ascending
    int sweeps = 0;
    double off_norm = 0.0;  // final off-diagonal Frobenius norm
    bool converged = false;
};

/// Cyclic Jacobi rotations; eigenvalues only. The matrix is consumed.
JacobiResult jacobi_eigenvalues(SymmetricMatrix a, const JacobiOptions& options = {});

/// n x n symmetric Toeplitz matrix K(i, j) = r(|i - j|), zero beyond the given lags.
SymmetricMatrix toeplitz_matrix(std::span<const double> r, std::size_t n);

/// Eigenvalues of the symmetric Toeplitz matrix. The centrosymmetric structure splits it
/// into two half-size symmetric blocks, each diagonalized by Jacobi.
JacobiResult toeplitz_eigenvalues(std::span<const double> r, std::size_t n, const JacobiOptions& options = {});

}  // namespace avc
