#ifndef SGVI_QUADRATURE_HPP
#define SGVI_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "sgvi/gaussian.hpp"

namespace sgvi {

/// Unscented-transform scaling parameters. Defaults follow the common
/// m = 2*n_x + 1 parameterization with kappa = 3 - n_x supplied by callers.
struct UnscentedParams {
    double alpha = 1.0;
    double beta_s = 0.1;
    double kappa = 0.0;

    /// kappa = 3 - n_x, alpha = 1, beta_s = 0.1.
    static UnscentedParams defaults_for(int n_x) {
        return UnscentedParams{1.0, 0.1, 3.0 - static_cast<double>(n_x)};
    }
};

/// 2*n_x + 1 deterministic quadrature nodes and their weights. points[0] is
/// the generating mean; the rest come in symmetric +/- pairs.
struct SigmaPointSet {
    std::vector<Vector> points;
    std::vector<double> mean_weights;
    std::vector<double> cov_weights;

    int size() const { return static_cast<int>(points.size()); }
};

SigmaPointSet generate_sigma_points(const GaussianBelief& belief, const UnscentedParams& params);

enum class WeightKind { Mean, Covariance };

/// Sum_i w_i * g(x_i). Throws NonFiniteValue if g produces NaN/Inf at a node.
Vector expect(const std::function<Vector(const Vector&)>& g, const SigmaPointSet& sigma,
              WeightKind kind = WeightKind::Mean);

/// Matrix-valued version of expect.
Matrix expect_matrix(const std::function<Matrix(const Vector&)>& g, const SigmaPointSet& sigma,
                     WeightKind kind = WeightKind::Mean);

} // namespace sgvi

#endif
