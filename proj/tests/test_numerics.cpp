#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "outline_energy/numerics.hpp"
#include "support/test_oracles.hpp"

using namespace outline_energy;
using numerics::Matrix;

namespace {

Matrix random_symmetric(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = dist(rng);
            a(i, j) = v;
            a(j, i) = v;
        }
    return a;
}

double eigen_residual(const Matrix& a, const numerics::EigenResult& eig)
{
    const std::size_t n = a.rows();
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            double av = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                av += a(i, k) * eig.vectors(k, j);
            worst = std::max(worst, std::abs(av - eig.values[j] * eig.vectors(i, j)));
        }
    return worst;
}

double orthonormality_defect(const Matrix& v)
{
    const std::size_t n = v.rows();
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            double dot = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                dot += v(k, a) * v(k, b);
            worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
        }
    return worst;
}

} // namespace

TEST_CASE("identity matrix has unit eigenvalues")
{
    const auto eig = numerics::symmetric_eigen(Matrix::identity(4));
    for (const double v : eig.values)
        CHECK_THAT(v, Catch::Matchers::WithinAbs(1.0, 1e-14));
}

TEST_CASE("textbook 2x2 pair")
{
    Matrix a(2, 2);
    a(0, 0) = 2.0; a(0, 1) = 1.0;
    a(1, 0) = 1.0; a(1, 1) = 2.0;
    const auto eig = numerics::symmetric_eigen(a);
    REQUIRE_THAT(eig.values[0], Catch::Matchers::WithinAbs(3.0, 1e-12));
    REQUIRE_THAT(eig.values[1], Catch::Matchers::WithinAbs(1.0, 1e-12));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK_THAT(eig.vectors(0, 0), Catch::Matchers::WithinAbs(inv_sqrt2, 1e-12));
    CHECK_THAT(eig.vectors(1, 0), Catch::Matchers::WithinAbs(inv_sqrt2, 1e-12));
    CHECK_THAT(std::abs(eig.vectors(0, 1)), Catch::Matchers::WithinAbs(inv_sqrt2, 1e-12));
    CHECK_THAT(std::abs(eig.vectors(1, 1)), Catch::Matchers::WithinAbs(inv_sqrt2, 1e-12));
    // Sign convention: the largest-magnitude entry of each column is positive.
    CHECK(eig.vectors(0, 0) > 0.0);
}

TEST_CASE("random symmetric 8x8 satisfies the definition")
{
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 25; ++round) {
        const Matrix a = random_symmetric(8, rng);
        const auto eig = numerics::symmetric_eigen(a);
        const double amax = a.max_abs();
        CHECK(eigen_residual(a, eig) <= 1e-8 * std::max(1.0, amax));
        CHECK(orthonormality_defect(eig.vectors) <= 1e-10);
        for (std::size_t j = 1; j < eig.values.size(); ++j)
            CHECK(eig.values[j - 1] >= eig.values[j]);
        double trace = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < 8; ++i) {
            trace += a(i, i);
            sum += eig.values[i];
        }
        CHECK_THAT(sum, Catch::Matchers::WithinRel(trace, 1e-8));
    }
}

TEST_CASE("2x2 and 3x3 eigenvalue products match determinants")
{
    std::mt19937_64 rng(7);
    for (const std::size_t n : {std::size_t{2}, std::size_t{3}}) {
        for (int round = 0; round < 10; ++round) {
            const Matrix a = random_symmetric(n, rng);
            double det;
            if (n == 2) {
                det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
            } else {
                det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                      a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                      a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
            }
            const auto eig = numerics::symmetric_eigen(a);
            double prod = 1.0;
            for (const double v : eig.values)
                prod *= v;
            CHECK_THAT(prod, Catch::Matchers::WithinAbs(det, 1e-10 * std::max(1.0, std::abs(det))));
        }
    }
}

TEST_CASE("eigen input validation")
{
    Matrix rect(2, 3);
    CHECK_THROWS_AS(numerics::symmetric_eigen(rect), NumericError);

    Matrix skew(2, 2);
    skew(0, 1) = 1.0;
    skew(1, 0) = -1.0;
    CHECK_THROWS_AS(numerics::symmetric_eigen(skew), NumericError);

    Matrix bad(2, 2);
    bad(0, 0) = std::nan("");
    bad(0, 1) = bad(1, 0) = 0.0;
    bad(1, 1) = 1.0;
    CHECK_THROWS_AS(numerics::symmetric_eigen(bad), NumericError);
}

TEST_CASE("least squares: identity design returns the target")
{
    const Matrix x = Matrix::identity(5);
    const std::vector<double> y = {1.0, -2.0, 0.5, 4.0, 3.25};
    const auto beta = numerics::least_squares_min_norm(x, y);
    for (std::size_t i = 0; i < y.size(); ++i)
        CHECK_THAT(beta[i], Catch::Matchers::WithinAbs(y[i], 1e-12));
}

TEST_CASE("least squares: exact line recovery")
{
    Matrix x(3, 2);
    for (std::size_t r = 0; r < 3; ++r) {
        x(r, 0) = 1.0;
        x(r, 1) = static_cast<double>(r);
    }
    const std::vector<double> y = {1.0, 3.0, 5.0}; // y = 2 t + 1
    const auto beta = numerics::least_squares_min_norm(x, y);
    CHECK_THAT(beta[0], Catch::Matchers::WithinAbs(1.0, 1e-10));
    CHECK_THAT(beta[1], Catch::Matchers::WithinAbs(2.0, 1e-10));
}

TEST_CASE("least squares: duplicated column splits weight (minimum norm)")
{
    Matrix x(4, 3);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (std::size_t r = 0; r < 4; ++r) {
        x(r, 0) = dist(rng);
        x(r, 1) = x(r, 0); // exact duplicate
        x(r, 2) = dist(rng);
    }
    const std::vector<double> y = {1.0, 2.0, -1.0, 0.5};
    const auto beta = numerics::least_squares_min_norm(x, y);
    CHECK_THAT(beta[0], Catch::Matchers::WithinAbs(beta[1], 1e-9));

    // Ridge large enough that elimination on the singular Gram stays stable.
    const auto ref = test_support::pinv_least_squares(x, y, 1e-10);
    for (std::size_t j = 0; j < 3; ++j)
        CHECK_THAT(beta[j], Catch::Matchers::WithinAbs(ref[j], 1e-6));
}

TEST_CASE("least squares matches the independent pseudo-inverse oracle")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (const auto& [n, p] : {std::pair<std::size_t, std::size_t>{6, 4}, {4, 6}}) {
        for (int round = 0; round < 20; ++round) {
            Matrix x(n, p);
            std::vector<double> y(n);
            for (std::size_t r = 0; r < n; ++r) {
                y[r] = dist(rng);
                for (std::size_t c = 0; c < p; ++c)
                    x(r, c) = dist(rng);
            }
            const auto beta = numerics::least_squares_min_norm(x, y);
            const auto ref = test_support::pinv_least_squares(x, y);
            for (std::size_t j = 0; j < p; ++j)
                CHECK_THAT(beta[j], Catch::Matchers::WithinAbs(ref[j], 1e-8));
        }
    }
}

TEST_CASE("least squares: wide systems interpolate")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix x(4, 6);
    std::vector<double> y(4);
    for (std::size_t r = 0; r < 4; ++r) {
        y[r] = dist(rng);
        for (std::size_t c = 0; c < 6; ++c)
            x(r, c) = dist(rng);
    }
    const auto beta = numerics::least_squares_min_norm(x, y);
    for (std::size_t r = 0; r < 4; ++r) {
        double pred = 0.0;
        for (std::size_t c = 0; c < 6; ++c)
            pred += x(r, c) * beta[c];
        CHECK_THAT(pred, Catch::Matchers::WithinAbs(y[r], 1e-9));
    }
}

TEST_CASE("least squares residual is orthogonal to the column space")
{
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix x(12, 5);
    std::vector<double> y(12);
    for (std::size_t r = 0; r < 12; ++r) {
        y[r] = dist(rng);
        for (std::size_t c = 0; c < 5; ++c)
            x(r, c) = dist(rng);
    }
    const auto beta = numerics::least_squares_min_norm(x, y);
    std::vector<double> resid(12);
    for (std::size_t r = 0; r < 12; ++r) {
        double pred = 0.0;
        for (std::size_t c = 0; c < 5; ++c)
            pred += x(r, c) * beta[c];
        resid[r] = pred - y[r];
    }
    double worst = 0.0, scale = 0.0;
    for (std::size_t c = 0; c < 5; ++c) {
        double dot = 0.0, xty = 0.0;
        for (std::size_t r = 0; r < 12; ++r) {
            dot += x(r, c) * resid[r];
            xty += x(r, c) * y[r];
        }
        worst = std::max(worst, std::abs(dot));
        scale = std::max(scale, std::abs(xty));
    }
    CHECK(worst <= 1e-6 * scale);
}

TEST_CASE("least squares input validation")
{
    Matrix x(2, 2);
    x(0, 0) = 1.0;
    CHECK_THROWS_AS(numerics::least_squares_min_norm(x, {1.0}), NumericError);
    x(1, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(numerics::least_squares_min_norm(x, {1.0, 2.0}), NumericError);
}

TEST_CASE("determinism: identical inputs give identical outputs")
{
    std::mt19937_64 rng(42);
    const Matrix a = random_symmetric(8, rng);
    const auto e1 = numerics::symmetric_eigen(a);
    const auto e2 = numerics::symmetric_eigen(a);
    CHECK(e1.values == e2.values);
    CHECK(e1.vectors.data() == e2.vectors.data());
}
