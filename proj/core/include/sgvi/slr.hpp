#ifndef SGVI_SLR_HPP
#define SGVI_SLR_HPP

#include <functional>

#include "sgvi/quadrature.hpp"

namespace sgvi {

using StateFn = std::function<Vector(const Vector&)>;
using JacobianFn = std::function<Matrix(const Vector&)>;

/// Affine surrogate f(x) ~ F x + b + e, e ~ N(0, Lambda), together with the
/// predictive moments of the transition under the expansion belief.
struct SlrResult {
    Matrix F;
    Vector b;
    Matrix Lambda;   // linearization-error covariance, SPSD
    Vector mu_R;     // E[f(x)]
    Matrix S;        // Cov[f(x)] + Q
    Matrix C;        // E[(x - mu)(f(x) - mu_R)^T]
};

/// Statistical linear regression of f about `prev`, with expectations taken
/// by sigma-point quadrature. mu_R uses mean weights; C and S use covariance
/// weights (beta_s only enters here).
SlrResult slr_linearize(const StateFn& f, const Matrix& Q, const GaussianBelief& prev,
                        const UnscentedParams& params);

/// First-order Taylor surrogate at the mean: Lambda = 0, S = F Sigma F^T + Q.
/// Pass a null jacobian to fall back to central differences.
SlrResult jacobian_linearize(const StateFn& f, const JacobianFn& f_jacobian, const Matrix& Q,
                             const GaussianBelief& prev);

/// N(mu_R, S): the Gaussian approximation of the one-step-ahead marginal.
GaussianBelief marginal_predictive(const SlrResult& slr);

/// Central-difference Jacobian with step 1e-6 * (1 + |x_i|) per component.
Matrix central_difference_jacobian(const StateFn& f, const Vector& x);

} // namespace sgvi

#endif
