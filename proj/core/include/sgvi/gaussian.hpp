#ifndef SGVI_GAUSSIAN_HPP
#define SGVI_GAUSSIAN_HPP

#include <Eigen/Dense>

#include "sgvi/errors.hpp"

namespace sgvi {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// State/measurement dimensions of a system.
struct Dim {
    int n_x = 0;
    int n_z = 0;
};

/// Lower-triangular L with L*L^T = cov. Throws NotPositiveDefinite if the
/// (symmetrized) input has no such factor.
Matrix sqrt_factor(const Matrix& covariance);

/// Immutable Gaussian in moment form with the precision matrix cached
/// alongside the covariance. Both stay consistent for the lifetime of the
/// object; construction rejects indefinite inputs instead of repairing them.
class GaussianBelief {
public:
    static GaussianBelief from_moments(const Vector& mean, const Matrix& covariance);

    /// Canonical (information) form: covariance = precision^-1,
    /// mean = covariance * shifted_mean.
    static GaussianBelief from_canonical(const Matrix& precision, const Vector& shifted_mean);

    const Vector& mean() const { return mean_; }
    const Matrix& covariance() const { return covariance_; }
    const Matrix& precision() const { return precision_; }
    int dim() const { return static_cast<int>(mean_.size()); }

private:
    GaussianBelief(Vector mean, Matrix covariance, Matrix precision);

    Vector mean_;
    Matrix covariance_;
    Matrix precision_;
};

namespace detail {
/// (M + M^T)/2
inline Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }
}

} // namespace sgvi

#endif
