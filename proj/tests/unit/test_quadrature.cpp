#include "doctest.h"

#include <cmath>
#include <random>

#include "sgvi/quadrature.hpp"
#include "support/random_models.hpp"

using namespace sgvi;
using sgvi::testing::random_spd;
using sgvi::testing::random_vector;

namespace {

SigmaPointSet unit_1d_points(double kappa) {
    auto b = GaussianBelief::from_moments(Vector::Zero(1), Matrix::Identity(1, 1));
    return generate_sigma_points(b, UnscentedParams{1.0, 0.1, kappa});
}

} // namespace

TEST_CASE("scalar sigma points with kappa = 2") {
    auto set = unit_1d_points(2.0);
    REQUIRE(set.size() == 3);
    CHECK(set.points[0][0] == doctest::Approx(0.0));
    CHECK(set.points[1][0] == doctest::Approx(std::sqrt(3.0)));
    CHECK(set.points[2][0] == doctest::Approx(-std::sqrt(3.0)));
    CHECK(set.mean_weights[0] == doctest::Approx(2.0 / 3.0));
    CHECK(set.mean_weights[1] == doctest::Approx(1.0 / 6.0));
    CHECK(set.mean_weights[2] == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("sigma point structure invariants") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 5);
        auto b = GaussianBelief::from_moments(random_vector(n, rng, 2.0), random_spd(n, rng));
        auto set = generate_sigma_points(b, UnscentedParams::defaults_for(n));
        REQUIRE(set.size() == 2 * n + 1);

        double wsum = 0.0;
        for (double w : set.mean_weights) wsum += w;
        CHECK(std::abs(wsum - 1.0) < 1e-12);

        CHECK((set.points[0] - b.mean()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
        for (int i = 1; i <= n; ++i) {
            CHECK((set.points[i] + set.points[i + n] - 2.0 * b.mean()).cwiseAbs().maxCoeff() <
                  1e-10);
        }

        // weighted mean of the points is exactly the generating mean
        Vector mean = expect([](const Vector& x) { return x; }, set);
        CHECK((mean - b.mean()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("degenerate scaling is rejected") {
    auto b = GaussianBelief::from_moments(Vector::Zero(2), Matrix::Identity(2, 2));
    CHECK_THROWS_AS(generate_sigma_points(b, UnscentedParams{1.0, 0.1, -2.0}), DegenerateScaling);
}

TEST_CASE("singular covariance propagates NotPositiveDefinite") {
    Matrix cov = Matrix::Zero(1, 1);
    CHECK_THROWS_AS(GaussianBelief::from_moments(Vector::Constant(1, 5.0), cov),
                    NotPositiveDefinite);
}

TEST_CASE("scalar moment identities with kappa = 2") {
    auto set = unit_1d_points(2.0);
    Vector second = expect([](const Vector& x) { return Vector::Constant(1, x[0] * x[0]); }, set);
    CHECK(second[0] == doctest::Approx(1.0));

    // E[(x^2 - 1)^2] = E[x^4] - 2 E[x^2] + 1 = 2 for the standard normal
    Vector fourth = expect(
        [](const Vector& x) {
            const double c = x[0] * x[0] - 1.0;
            return Vector::Constant(1, c * c);
        },
        set);
    CHECK(fourth[0] == doctest::Approx(2.0));
}

TEST_CASE("non-finite integrand is reported") {
    auto set = unit_1d_points(2.0);
    CHECK_THROWS_AS(
        expect([](const Vector&) { return Vector::Constant(1, std::nan("")); }, set),
        NonFiniteValue);
}

TEST_CASE("polynomial exactness against closed form") {
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 3; ++n) {
        for (int rep = 0; rep < 10; ++rep) {
            const Vector mu = random_vector(n, rng, 2.0);
            const Matrix cov = random_spd(n, rng);
            auto b = GaussianBelief::from_moments(mu, cov);
            auto set = generate_sigma_points(b, UnscentedParams::defaults_for(n));

            Vector first = expect([](const Vector& x) { return x; }, set);
            CHECK((first - mu).cwiseAbs().maxCoeff() < 1e-10);

            Matrix second = expect_matrix(
                [&](const Vector& x) -> Matrix {
                    return (x - mu) * (x - mu).transpose();
                },
                set, WeightKind::Covariance);
            CHECK((second - cov).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("Monte Carlo agreement for smooth nonlinear integrands") {
    std::mt19937_64 rng(9);
    const double mu = 0.4, var = 0.8;
    auto b = GaussianBelief::from_moments(Vector::Constant(1, mu), Matrix::Constant(1, 1, var));
    auto set = generate_sigma_points(b, UnscentedParams::defaults_for(1));

    auto check_against_mc = [&](auto g) {
        const int n_samples = 1000000;
        std::normal_distribution<double> d(mu, std::sqrt(var));
        double sum = 0.0, sum2 = 0.0;
        for (int i = 0; i < n_samples; ++i) {
            const double v = g(d(rng));
            sum += v;
            sum2 += v * v;
        }
        const double mc_mean = sum / n_samples;
        const double mc_se = std::sqrt((sum2 / n_samples - mc_mean * mc_mean) / n_samples);
        Vector ut = expect([&](const Vector& x) { return Vector::Constant(1, g(x[0])); }, set);
        CHECK(std::abs(ut[0] - mc_mean) < 3.0 * mc_se + 2e-3);
    };
    check_against_mc([](double x) { return std::sin(x); });
    check_against_mc([](double x) { return x * x * x; });
}

TEST_CASE("affine invariance of sigma points for triangular maps") {
    std::mt19937_64 rng(15);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 2);
        Matrix A = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) A(i, j) = (i == j) ? 1.0 + std::abs(testing::random_vector(1, rng)[0]) : testing::random_vector(1, rng)[0];
        const Vector c = testing::random_vector(n, rng);
        const Vector mu = testing::random_vector(n, rng);
        const Matrix cov = testing::random_spd(n, rng);

        const auto params = UnscentedParams::defaults_for(n);
        auto base = generate_sigma_points(GaussianBelief::from_moments(mu, cov), params);
        auto mapped = generate_sigma_points(
            GaussianBelief::from_moments(A * mu + c, A * cov * A.transpose()), params);
        for (int i = 0; i < base.size(); ++i) {
            CHECK((mapped.points[i] - (A * base.points[i] + c)).cwiseAbs().maxCoeff() < 1e-8);
        }
    }
}
