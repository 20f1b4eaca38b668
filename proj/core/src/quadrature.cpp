#include "sgvi/quadrature.hpp"

#include <cmath>

namespace sgvi {

SigmaPointSet generate_sigma_points(const GaussianBelief& belief, const UnscentedParams& params) {
    const int n = belief.dim();
    const double lambda = params.alpha * params.alpha * (n + params.kappa) - n;
    const double scale = n + lambda;
    if (scale <= 0.0) {
        throw DegenerateScaling("generate_sigma_points: n_x + lambda must be positive");
    }

    const Matrix root = sqrt_factor(scale * belief.covariance());
    const Vector& mu = belief.mean();

    SigmaPointSet set;
    set.points.reserve(2 * n + 1);
    set.points.push_back(mu);
    for (int i = 0; i < n; ++i) set.points.push_back(mu + root.col(i));
    for (int i = 0; i < n; ++i) set.points.push_back(mu - root.col(i));

    const double w0 = lambda / scale;
    const double wi = 1.0 / (2.0 * scale);
    set.mean_weights.assign(2 * n + 1, wi);
    set.mean_weights[0] = w0;
    set.cov_weights = set.mean_weights;
    set.cov_weights[0] = w0 + (1.0 - params.alpha * params.alpha + params.beta_s);
    return set;
}

namespace {
const std::vector<double>& weights_of(const SigmaPointSet& sigma, WeightKind kind) {
    return kind == WeightKind::Mean ? sigma.mean_weights : sigma.cov_weights;
}
}

Vector expect(const std::function<Vector(const Vector&)>& g, const SigmaPointSet& sigma,
              WeightKind kind) {
    const auto& w = weights_of(sigma, kind);
    Vector acc;
    for (int i = 0; i < sigma.size(); ++i) {
        Vector gi = g(sigma.points[i]);
        if (!gi.allFinite()) throw NonFiniteValue("expect: integrand returned NaN/Inf at a sigma point");
        if (i == 0) acc = w[i] * gi;
        else acc += w[i] * gi;
    }
    return acc;
}

Matrix expect_matrix(const std::function<Matrix(const Vector&)>& g, const SigmaPointSet& sigma,
                     WeightKind kind) {
    const auto& w = weights_of(sigma, kind);
    Matrix acc;
    for (int i = 0; i < sigma.size(); ++i) {
        Matrix gi = g(sigma.points[i]);
        if (!gi.allFinite()) throw NonFiniteValue("expect_matrix: integrand returned NaN/Inf at a sigma point");
        if (i == 0) acc = w[i] * gi;
        else acc += w[i] * gi;
    }
    return acc;
}

} // namespace sgvi
