#include "avc/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace avc {

namespace {

double off_diagonal_norm(const SymmetricMatrix& a) {
    double s = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

double frobenius_norm(const SymmetricMatrix& a) {
    double s = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

double r_at(std::span<const double> r, std::size_t lag) { return lag < r.size() ? r[lag] : 0.0; }

void append(JacobiResult& into, const JacobiResult& part) {
    into.eigenvalues.insert(into.eigenvalues.end(), part.eigenvalues.begin(), part.eigenvalues.end());
    into.sweeps = std::max(into.sweeps, part.sweeps);
    into.off_norm = std::hypot(into.off_norm, part.off_norm);
    into.converged = into.converged && part.converged;
}

}  // namespace

JacobiResult jacobi_eigenvalues(SymmetricMatrix a, const JacobiOptions& options) {
    const std::size_t n = a.size();
    JacobiResult result;
    const double target = options.off_tolerance * frobenius_norm(a);
    result.off_norm = off_diagonal_norm(a);
    while (result.off_norm > target && result.sweeps < options.max_sweeps) {
        ++result.sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p), aqq = a(q, q);
                // Rotation is numerically a no-op once apq is negligible next to both diagonals.
                if (result.sweeps > 3 && std::abs(app) + 1e4 * std::abs(apq) == std::abs(app) &&
                    std::abs(aqq) + 1e4 * std::abs(apq) == std::abs(aqq)) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                double* rp = a.row(p);
                double* rq = a.row(q);
                for (std::size_t k = 0; k < n; ++k) {
                    const double g = rp[k], h = rq[k];
                    rp[k] = g - s * (h + g * tau);
                    rq[k] = h + s * (g - h * tau);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    a(k, p) = rp[k];
                    a(k, q) = rq[k];
                }
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
            }
        }
        result.off_norm = off_diagonal_norm(a);
    }
    result.converged = result.off_norm <= target;
    result.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) result.eigenvalues[i] = a(i, i);
    std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
    return result;
}

SymmetricMatrix toeplitz_matrix(std::span<const double> r, std::size_t n) {
    SymmetricMatrix k(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) k(i, j) = r_at(r, i > j ? i - j : j - i);
    return k;
}

JacobiResult toeplitz_eigenvalues(std::span<const double> r, std::size_t n, const JacobiOptions& options) {
    if (n < 4) return jacobi_eigenvalues(toeplitz_matrix(r, n), options);

    // With J the exchange matrix, K = [[A, B], [B^T, JAJ]] is similar to
    // diag(A + BJ, A - BJ), and (A +- BJ)(i, j) = K(i, j) +- K(i, n-1-j).
    const std::size_t m = n / 2;
    const bool odd = (n % 2) == 1;
    auto entry = [&](std::size_t i, std::size_t j) { return r_at(r, i > j ? i - j : j - i); };

    SymmetricMatrix even_block(m + (odd ? 1 : 0));
    SymmetricMatrix odd_block(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            even_block(i, j) = entry(i, j) + entry(i, n - 1 - j);
            odd_block(i, j) = entry(i, j) - entry(i, n - 1 - j);
        }
    if (odd) {
        for (std::size_t i = 0; i < m; ++i) even_block(i, m) = even_block(m, i) = std::numbers::sqrt2 * entry(i, m);
        even_block(m, m) = entry(m, m);
    }

    JacobiResult result = jacobi_eigenvalues(std::move(even_block), options);
    append(result, jacobi_eigenvalues(std::move(odd_block), options));
    std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
    return result;
}

}  // namespace avc
