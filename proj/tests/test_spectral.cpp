#include <Eigen/Dense>

#include "avc/errors.hpp"
#include "avc/spectral.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace avc;

namespace {

std::vector<double> ar1(double rho, std::size_t lags) {
    std::vector<double> r(lags);
    for (std::size_t l = 0; l < lags; ++l) r[l] = std::pow(rho, static_cast<double>(l));
    return r;
}

Eigen::MatrixXd dense_toeplitz(const std::vector<double>& r, std::size_t n) {
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t lag = i > j ? i - j : j - i;
            if (lag < r.size()) k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r[lag];
        }
    return k;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("flat spectrum reduces to the scalar channel") {
    const SpectralSpec spec{AutocorrPsd{{1.5}}, {2.0, 1.0}};
    const auto c = colored_capacity(spec, 256);
    CHECK(c.random == doctest::Approx(0.5 * std::log2(1.0 + 2.0 / 2.5)).epsilon(1e-12));
    CHECK(c.deterministic == c.random);
    const SpectralSpec jammed{AutocorrPsd{{1.5}}, {1.0, 2.0}};
    CHECK(colored_capacity(jammed, 256).deterministic == 0.0);
}

TEST_CASE("two level spectrum has closed form levels") {
    const auto spec = load_spec_as<SpectralSpec>(test::data("two_level.json"), SpecKind::Spectral);
    const auto a = freq_double_waterfill(spec, 1024);
    CHECK(a.beta == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(a.alpha == doctest::Approx(7.0).epsilon(1e-10));
    CHECK(colored_capacity_from(a) == doctest::Approx(0.5 * std::log2(7.0 / 3.0)).epsilon(1e-10));
    const auto r = autocorr_from_psd(spec, 2);
    CHECK(r[0] == doctest::Approx(2.0));
}

TEST_CASE("autocorrelation of a cosine series is exact") {
    const SpectralSpec spec{AutocorrPsd{{1.0, 0.3, -0.1}}, {1.0, 1.0}};
    const auto r = autocorr_from_psd(spec, 4);
    CHECK(r[0] == 1.0);
    CHECK(r[1] == 0.3);
    CHECK(r[2] == -0.1);
    CHECK(r[3] == 0.0);
}

TEST_CASE("eval_G branches and domain") {
    CHECK(eval_G(1.0, 8.0, 2.0) == doctest::Approx(1.0));
    CHECK(eval_G(4.0, 8.0, 2.0) == doctest::Approx(0.5));
    CHECK(eval_G(9.0, 8.0, 2.0) == 0.0);
    CHECK_THROWS_AS(eval_G(1.0, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(eval_G(0.5, 1.0, 0.0), DomainError);
    CHECK(eval_G(1.5, 1.0, 0.0) == 0.0);
}

TEST_CASE("toeplitz eigenvalues agree with a dense solver") {
    for (std::size_t n : {1u, 2u, 7u, 40u, 65u}) {
        const auto r = ar1(0.5, 30);
        const auto model = toeplitz_model(r, n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_toeplitz(r, n), Eigen::EigenvaluesOnly);
        REQUIRE(model.eigenvalues.size() == n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(model.eigenvalues[i] == doctest::Approx(es.eigenvalues()(static_cast<Eigen::Index>(i))).epsilon(1e-9));
    }
}

TEST_CASE("capacity is invariant under orthogonal conjugation") {
    const auto r = ar1(0.6, 20);
    const std::size_t n = 24;
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
    const Eigen::MatrixXd k = q * dense_toeplitz(r, n) * q.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (k + k.transpose()), Eigen::EigenvaluesOnly);
    std::vector<double> eig(es.eigenvalues().data(), es.eigenvalues().data() + n);
    const double rotated = eigenvalue_capacity(eig, 2.0, 0.5).capacity;
    CHECK(rotated == doctest::Approx(toeplitz_capacity(r, n, 2.0, 0.5)).epsilon(1e-9));
}

TEST_CASE("indefinite autocorrelation is rejected") {
    const std::vector<double> r = {1.0, 0.8};
    CHECK_NOTHROW(toeplitz_model(r, 2));
    CHECK_THROWS_AS(toeplitz_model(r, 12), NotPSD);
}

TEST_CASE("szego gap is zero for a flat spectrum") {
    const std::vector<double> r = {2.0};
    const std::vector<std::size_t> ns = {1, 4, 16, 64};
    const auto table = szego_convergence(r, 3.0, 1.0, ns, 512);
    for (const auto& row : table.rows) CHECK(row.gap <= 1e-9);
    CHECK(table.monotone);
    const std::vector<std::size_t> bad = {4, 4};
    CHECK_THROWS_AS(szego_convergence(r, 3.0, 1.0, bad, 512), DomainError);
}

TEST_CASE("szego gap shrinks for a short memory process") {
    const auto r = ar1(0.5, 40);
    const std::vector<std::size_t> ns = {8, 32, 128};
    const auto table = szego_convergence(r, 2.0, 0.5, ns);
    CHECK(table.rows[2].gap < table.rows[0].gap);
    CHECK(table.rows[2].gap < 1e-2);
}

}
