#include "deepesn/errors.hpp"
#include "deepesn/numerics.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace deepesn;

namespace {

double rel_err(double got, double want)
{
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

} // namespace

TEST_CASE("matrix construction rejects bad shapes and non-finite data")
{
    CHECK_THROWS_AS(DenseMatrix(0, 3), DimensionError);
    CHECK_THROWS_AS(DenseMatrix(2, 2, std::vector<double>{1, 2, 3}), DimensionError);
    CHECK_THROWS_AS(DenseMatrix(1, 2, std::vector<double>{1, NAN}), InvalidArgument);
    CHECK_THROWS_AS((DenseMatrix{{1, 2}, {3}}), DimensionError);
    CHECK_THROWS_AS(DenseVector({1.0, INFINITY}), InvalidArgument);
    CHECK_THROWS_AS(SingularSpectrum({1.0, 2.0}), InvalidArgument);
}

TEST_CASE("spectral_radius closed forms")
{
    CHECK(spectral_radius(DenseMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spectral_radius(DenseMatrix{{2, 0}, {0, -3}}) == doctest::Approx(3.0).epsilon(1e-12));
    // rotation-scaling block: dominant complex pair 2 e^{+-i pi/3}
    const double c = 2.0 * std::cos(M_PI / 3), s = 2.0 * std::sin(M_PI / 3);
    CHECK(spectral_radius(DenseMatrix{{c, -s, 0}, {s, c, 0}, {0, 0, 1.5}}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(spectral_radius(DenseMatrix(4, 4, 0.0)) == 0.0);
    CHECK(spectral_radius(DenseMatrix{{0.7}}) == doctest::Approx(0.7));
}

TEST_CASE("spectral_radius errors")
{
    CHECK_THROWS_AS(spectral_radius(DenseMatrix(2, 3)), DimensionError);
    CHECK_THROWS_AS(spectral_radius(DenseMatrix::identity(2), {0.0, 10}), InvalidArgument);
    CHECK_THROWS_AS(spectral_radius(DenseMatrix::identity(2), {1e-6, 0}), InvalidArgument);
}

TEST_CASE("spectral_radius matches characteristic polynomial roots on random 4x4")
{
    oracle::TestRng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const auto a = oracle::random_matrix(rng, 4, 4);
        CHECK(rel_err(spectral_radius(a), oracle::spectral_radius_by_roots(a)) <= 1e-6);
    }
}

TEST_CASE("spectral_radius of a similarity transform with known spectrum (100x100)")
{
    // Block-diagonal D with 2x2 rotation-scaling blocks; A = Q D Q^T with Q
    // orthogonal from the Jacobi solver of a random symmetric matrix.
    oracle::TestRng rng(11);
    const std::size_t n = 100;
    auto sym = oracle::random_matrix(rng, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) sym(i, j) = sym(j, i);
    const auto q = symmetric_eigen(sym).vectors;
    DenseMatrix d(n, n);
    double expected = 0.0;
    for (std::size_t b = 0; b < n / 2; ++b) {
        const double radius = 0.2 + 0.7 * double(b) / double(n / 2);
        const double theta = 0.3 + 0.05 * double(b);
        d(2 * b, 2 * b) = radius * std::cos(theta);
        d(2 * b, 2 * b + 1) = -radius * std::sin(theta);
        d(2 * b + 1, 2 * b) = radius * std::sin(theta);
        d(2 * b + 1, 2 * b + 1) = radius * std::cos(theta);
        expected = std::max(expected, radius);
    }
    const auto a = multiply(multiply(q, d), q.transposed());
    CHECK(rel_err(spectral_radius(a), expected) <= 1e-10);
}

TEST_CASE("spectral_radius is absolutely homogeneous")
{
    oracle::TestRng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = oracle::random_matrix(rng, 12, 12);
        const double c = rng.uniform(-5.0, 5.0);
        CHECK(rel_err(spectral_radius(scaled(a, c)), std::abs(c) * spectral_radius(a)) <= 1e-8);
    }
}

TEST_CASE("operator_norm_2")
{
    CHECK(operator_norm_2(DenseMatrix{{0.5, 0}, {0, 2}}) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(operator_norm_2(DenseMatrix(3, 2, 0.0)) == 0.0);
    CHECK(operator_norm_2(DenseMatrix{{3}, {4}}) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK_THROWS_AS(operator_norm_2(DenseMatrix::identity(2), {-1.0, 10}), InvalidArgument);

    SUBCASE("matches the Gram eigendecomposition on a random 5x3")
    {
        oracle::TestRng rng(5);
        const auto a = oracle::random_matrix(rng, 5, 3);
        const double want = std::sqrt(symmetric_eigen(gram_cols(a)).values.front());
        CHECK(std::abs(operator_norm_2(a, {1e-12, 10000}) - want) <= 1e-8);
    }
    SUBCASE("dominates the spectral radius")
    {
        oracle::TestRng rng(9);
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = oracle::random_matrix(rng, 8, 8);
            CHECK(operator_norm_2(a) >= spectral_radius(a) * (1.0 - 1e-6));
        }
    }
}

TEST_CASE("symmetric_eigen")
{
    auto diag = symmetric_eigen(DenseMatrix{{3, 0, 0}, {0, 1, 0}, {0, 0, 2}});
    CHECK(diag.values == std::vector<double>{3, 2, 1});

    auto exchange = symmetric_eigen(DenseMatrix{{0, 1}, {1, 0}});
    CHECK(exchange.values[0] == doctest::Approx(1.0));
    CHECK(exchange.values[1] == doctest::Approx(-1.0));

    CHECK_THROWS_AS(symmetric_eigen(DenseMatrix(2, 3)), DimensionError);

    SUBCASE("random symmetric 6x6 reconstructs and V is orthogonal")
    {
        oracle::TestRng rng(13);
        auto s = oracle::random_matrix(rng, 6, 6);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < i; ++j) s(i, j) = s(j, i);
        const auto e = symmetric_eigen(s);
        const auto recon = multiply(multiply(e.vectors, DenseMatrix::diagonal(e.values)), e.vectors.transposed());
        const double scale = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
        for (std::size_t i = 0; i < s.values().size(); ++i)
            CHECK(std::abs(recon.values()[i] - s.values()[i]) <= 1e-8 * scale);
        const auto vtv = multiply(e.vectors.transposed(), e.vectors);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) CHECK(std::abs(vtv(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-8);
        double sum = 0.0;
        for (double v : e.values) sum += v;
        CHECK(std::abs(sum - trace(s)) <= 1e-10 * scale);
        for (std::size_t k = 1; k < 6; ++k) CHECK(e.values[k - 1] >= e.values[k]);
    }
}

TEST_CASE("singular_values")
{
    auto rank_one = singular_values(DenseMatrix{{1, 1, 1, 1}, {0, 0, 0, 0}});
    CHECK(rank_one[0] == doctest::Approx(2.0));
    CHECK(rank_one[1] == 0.0);

    auto ortho = singular_values(DenseMatrix{{0.6, 0.8, 0}, {-0.8, 0.6, 0}});
    CHECK(ortho[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ortho[1] == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(singular_values(DenseMatrix(3, 2)), DimensionError);

    SUBCASE("random 4x50 against one-sided Jacobi, and sum of squares = trace(XX^T)")
    {
        oracle::TestRng rng(17);
        const auto x = oracle::random_matrix(rng, 4, 50);
        const auto got = singular_values(x);
        const auto want = oracle::hestenes_singular_values(x);
        REQUIRE(got.size() == 4);
        for (std::size_t i = 0; i < 4; ++i)
            if (want[i] > 1e-10) CHECK(rel_err(got[i], want[i]) <= 1e-8);
        double ss = 0.0;
        for (double s : got.values()) ss += s * s;
        CHECK(rel_err(ss, trace(gram_rows(x))) <= 1e-8);
    }
}

TEST_CASE("least_squares_solve")
{
    SUBCASE("identity design returns the targets")
    {
        const DenseMatrix y{{0.3, -1.2, 4.0}};
        const auto w = least_squares_solve(DenseMatrix::identity(3), y);
        for (std::size_t j = 0; j < 3; ++j) CHECK(w(0, j) == doctest::Approx(y(0, j)).epsilon(1e-12));
    }
    SUBCASE("decoupled scalars")
    {
        const auto w = least_squares_solve(DenseMatrix{{2, 0}, {0, 4}}, DenseMatrix{{2, 4}});
        CHECK(w(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(w(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("random overdetermined system against Gaussian elimination")
    {
        oracle::TestRng rng(19);
        const auto x = oracle::random_matrix(rng, 6, 40);
        const auto y = oracle::random_matrix(rng, 2, 40);
        const auto w = least_squares_solve(x, y);
        const auto want = oracle::normal_equation_solution(x, y);
        for (std::size_t i = 0; i < w.values().size(); ++i)
            CHECK(std::abs(w.values()[i] - want.values()[i]) <= 1e-8);

        // stationarity: gradient 2 (W X - Y) X^T vanishes
        DenseMatrix resid = multiply(w, x);
        for (std::size_t i = 0; i < resid.values().size(); ++i) resid.values()[i] -= y.values()[i];
        const auto grad = scaled(multiply(resid, x.transposed()), 2.0);
        CHECK(max_abs(grad) <= 1e-6 * frobenius_norm(y) * frobenius_norm(x));
    }
    SUBCASE("full-rank square system reproduces Y X^-1")
    {
        oracle::TestRng rng(23);
        for (int trial = 0; trial < 10; ++trial) {
            const auto x = oracle::random_matrix(rng, 5, 5);
            const auto y = oracle::random_matrix(rng, 1, 5);
            const auto w = least_squares_solve(x, y);
            // W X = Y  <=>  X^T W^T = Y^T
            const auto want = oracle::gauss_solve(x.transposed(), y.transposed()).transposed();
            for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(w(0, i) - want(0, i)) <= 1e-8 * (1.0 + std::abs(want(0, i))));
        }
    }
    SUBCASE("rank-deficient design uses the pseudoinverse")
    {
        const auto w = least_squares_solve(DenseMatrix{{1, 1, 1}, {0, 0, 0}}, DenseMatrix{{2, 2, 2}});
        CHECK(w(0, 0) == doctest::Approx(2.0));
        CHECK(std::abs(w(0, 1)) <= 1e-12);
    }
    SUBCASE("ridge shrinks toward zero")
    {
        oracle::TestRng rng(29);
        const auto x = oracle::random_matrix(rng, 3, 20);
        const auto y = oracle::random_matrix(rng, 1, 20);
        CHECK(max_abs(least_squares_solve(x, y, 1e12)) <= 1e-6);
    }
    CHECK_THROWS_AS(least_squares_solve(DenseMatrix(2, 3), DenseMatrix(1, 4)), DimensionError);
    CHECK_THROWS_AS(least_squares_solve(DenseMatrix(2, 3, 0.0), DenseMatrix(1, 3, 1.0)), DegenerateSystemError);
    CHECK_THROWS_AS(least_squares_solve(DenseMatrix(2, 3), DenseMatrix(1, 3), -1.0), InvalidArgument);
}
