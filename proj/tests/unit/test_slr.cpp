#include "doctest.h"

#include <cmath>
#include <random>

#include "sgvi/slr.hpp"
#include "support/random_models.hpp"

using namespace sgvi;
using sgvi::testing::random_spd;
using sgvi::testing::random_vector;

namespace {

// beta_s = 0 so the covariance-weight quadrature reproduces exact Gaussian
// moments in the scalar kappa = 3 - n case.
const UnscentedParams kExactScalar{1.0, 0.0, 2.0};

GaussianBelief std_normal_1d() {
    return GaussianBelief::from_moments(Vector::Zero(1), Matrix::Identity(1, 1));
}

} // namespace

TEST_CASE("SLR of an affine map is exact") {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const Matrix A = sgvi::testing::random_matrix(n, n, rng);
        const Matrix Q = random_spd(n, rng);
        auto prev = GaussianBelief::from_moments(random_vector(n, rng), random_spd(n, rng));
        auto slr = slr_linearize([&](const Vector& x) -> Vector { return A * x; }, Q, prev,
                                 UnscentedParams::defaults_for(n));

        CHECK((slr.F - A).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(slr.b.cwiseAbs().maxCoeff() < 1e-9);
        CHECK(slr.Lambda.cwiseAbs().maxCoeff() < 1e-9);
        CHECK((slr.mu_R - A * prev.mean()).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((slr.S - (A * prev.covariance() * A.transpose() + Q)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("SLR of x^2 about the standard normal") {
    auto slr = slr_linearize(
        [](const Vector& x) { return Vector::Constant(1, x[0] * x[0]); },
        Matrix::Identity(1, 1), std_normal_1d(), kExactScalar);
    CHECK(slr.mu_R[0] == doctest::Approx(1.0));
    CHECK(slr.C(0, 0) == doctest::Approx(0.0));
    CHECK(slr.F(0, 0) == doctest::Approx(0.0));
    CHECK(slr.b[0] == doctest::Approx(1.0));
    CHECK(slr.Lambda(0, 0) == doctest::Approx(2.0));
    CHECK(slr.S(0, 0) == doctest::Approx(3.0));
}

TEST_CASE("SLR predictive variance agrees with Monte Carlo") {
    auto slr = slr_linearize(
        [](const Vector& x) { return Vector::Constant(1, x[0] * x[0]); },
        Matrix::Identity(1, 1), std_normal_1d(), kExactScalar);

    std::mt19937_64 rng(23);
    std::normal_distribution<double> d(0.0, 1.0);
    const int n_samples = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double x = d(rng);
        const double fx = x * x;
        sum += fx;
        sum2 += fx * fx;
    }
    const double mean = sum / n_samples;
    const double var = sum2 / n_samples - mean * mean;
    // standard error of the variance estimate via the 4th central moment
    double m4 = 0.0;
    std::mt19937_64 rng2(29);
    for (int i = 0; i < n_samples; ++i) {
        const double x = d(rng2);
        const double c = x * x - mean;
        m4 += c * c * c * c;
    }
    m4 /= n_samples;
    const double se_var = std::sqrt((m4 - var * var) / n_samples);
    CHECK(std::abs(slr.S(0, 0) - (var + 1.0)) < 3.0 * se_var);
}

TEST_CASE("marginal predictive moments") {
    auto slr = slr_linearize(
        [](const Vector& x) { return Vector::Constant(1, x[0] * x[0]); },
        Matrix::Identity(1, 1), std_normal_1d(), kExactScalar);
    auto pred = marginal_predictive(slr);
    CHECK(pred.mean()[0] == doctest::Approx(1.0));
    CHECK(pred.covariance()(0, 0) == doctest::Approx(3.0));

    // identity transition, Q = I, prev = N(0, I) -> N(0, 2I)
    const int n = 3;
    auto prev = GaussianBelief::from_moments(Vector::Zero(n), Matrix::Identity(n, n));
    auto slr_id = slr_linearize([](const Vector& x) { return x; }, Matrix::Identity(n, n), prev,
                                UnscentedParams::defaults_for(n));
    auto pred_id = marginal_predictive(slr_id);
    CHECK(pred_id.mean().cwiseAbs().maxCoeff() < 1e-12);
    CHECK((pred_id.covariance() - 2.0 * Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Taylor surrogate of x^2 at the origin") {
    auto taylor = jacobian_linearize(
        [](const Vector& x) { return Vector::Constant(1, x[0] * x[0]); },
        [](const Vector& x) { return Matrix::Constant(1, 1, 2.0 * x[0]); },
        Matrix::Identity(1, 1), std_normal_1d());
    CHECK(taylor.F(0, 0) == doctest::Approx(0.0));
    CHECK(taylor.b[0] == doctest::Approx(0.0));
    CHECK(taylor.mu_R[0] == doctest::Approx(0.0));
    CHECK(taylor.S(0, 0) == doctest::Approx(1.0));
    CHECK(taylor.Lambda(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("Taylor and SLR agree for affine maps") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const Matrix A = sgvi::testing::random_matrix(n, n, rng);
        const Vector c = random_vector(n, rng);
        const Matrix Q = random_spd(n, rng);
        auto prev = GaussianBelief::from_moments(random_vector(n, rng), random_spd(n, rng));
        auto f = [&](const Vector& x) -> Vector { return A * x + c; };
        auto slr = slr_linearize(f, Q, prev, UnscentedParams::defaults_for(n));
        auto taylor = jacobian_linearize(f, nullptr, Q, prev);
        CHECK((slr.F - taylor.F).cwiseAbs().maxCoeff() < 1e-6);
        CHECK((slr.b - taylor.b).cwiseAbs().maxCoeff() < 1e-6);
        CHECK((slr.S - taylor.S).cwiseAbs().maxCoeff() < 1e-6);
        CHECK((slr.mu_R - taylor.mu_R).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("SLR of sin near a small-variance belief matches Taylor") {
    auto prev = GaussianBelief::from_moments(Vector::Zero(1), Matrix::Constant(1, 1, 0.01));
    auto f = [](const Vector& x) { return Vector::Constant(1, std::sin(x[0])); };
    auto slr = slr_linearize(f, Matrix::Constant(1, 1, 0.01), prev, kExactScalar);
    CHECK(std::abs(slr.mu_R[0]) < 1e-3);
    CHECK(slr.S(0, 0) == doctest::Approx(0.02).epsilon(0.05));
}

TEST_CASE("linearization error covariance stays positive semidefinite") {
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const Matrix W = sgvi::testing::random_matrix(n, n, rng);
        auto f = [&](const Vector& x) -> Vector {
            Vector out = W * x;
            for (int i = 0; i < n; ++i) out[i] += 0.3 * std::sin(x[i]) + 0.1 * x[i] * x[i];
            return out;
        };
        auto prev = GaussianBelief::from_moments(random_vector(n, rng), random_spd(n, rng));
        auto slr = slr_linearize(f, random_spd(n, rng), prev, UnscentedParams::defaults_for(n));
        Eigen::SelfAdjointEigenSolver<Matrix> es(slr.Lambda);
        CHECK(es.eigenvalues().minCoeff() > -1e-9);
        // F = C^T Sigma^-1 consistency
        CHECK((slr.F - slr.C.transpose() * prev.precision()).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("SLR converges to the Taylor surrogate as the belief shrinks") {
    auto f = [](const Vector& x) {
        Vector out(2);
        out[0] = std::sin(x[0]) + 0.5 * x[1];
        out[1] = x[0] * x[0] + std::cos(x[1]);
        return out;
    };
    Vector mu(2);
    mu << 0.7, -0.3;
    std::mt19937_64 rng(41);
    const Matrix base = random_spd(2, rng);
    const Matrix Q = 0.1 * Matrix::Identity(2, 2);

    double prev_gap = std::numeric_limits<double>::infinity();
    for (int k : {2, 4, 6}) {
        const Matrix cov = std::pow(10.0, -k) * base;
        auto prev = GaussianBelief::from_moments(mu, cov);
        auto slr = slr_linearize(f, Q, prev, UnscentedParams::defaults_for(2));
        auto taylor = jacobian_linearize(f, nullptr, Q, prev);
        const double gap = (slr.F - taylor.F).norm() + (slr.b - taylor.b).norm() +
                           (slr.mu_R - taylor.mu_R).norm();
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}
