#include "sgvi/slr.hpp"

namespace sgvi {

SlrResult slr_linearize(const StateFn& f, const Matrix& Q, const GaussianBelief& prev,
                        const UnscentedParams& params) {
    const int n = prev.dim();
    if (Q.rows() != n || Q.cols() != n) {
        throw DimensionMismatch("slr_linearize: Q must be n_x x n_x");
    }
    const SigmaPointSet sigma = generate_sigma_points(prev, params);

    std::vector<Vector> fx(sigma.points.size());
    for (size_t i = 0; i < sigma.points.size(); ++i) {
        fx[i] = f(sigma.points[i]);
        if (!fx[i].allFinite()) throw NonFiniteValue("slr_linearize: f returned NaN/Inf at a sigma point");
    }

    Vector mu_R = Vector::Zero(n);
    for (size_t i = 0; i < fx.size(); ++i) mu_R += sigma.mean_weights[i] * fx[i];

    Matrix C = Matrix::Zero(n, n);
    Matrix spread = Matrix::Zero(n, n);
    for (size_t i = 0; i < fx.size(); ++i) {
        const Vector dx = sigma.points[i] - prev.mean();
        const Vector df = fx[i] - mu_R;
        C += sigma.cov_weights[i] * dx * df.transpose();
        spread += sigma.cov_weights[i] * df * df.transpose();
    }

    SlrResult out;
    out.mu_R = std::move(mu_R);
    out.C = C;
    out.S = detail::symmetrize(spread + Q);
    out.F = C.transpose() * prev.precision();
    out.b = out.mu_R - out.F * prev.mean();
    out.Lambda = detail::symmetrize(out.S - Q - out.F * prev.covariance() * out.F.transpose());
    return out;
}

SlrResult jacobian_linearize(const StateFn& f, const JacobianFn& f_jacobian, const Matrix& Q,
                             const GaussianBelief& prev) {
    const int n = prev.dim();
    if (Q.rows() != n || Q.cols() != n) {
        throw DimensionMismatch("jacobian_linearize: Q must be n_x x n_x");
    }
    const Vector& mu = prev.mean();
    Matrix F = f_jacobian ? f_jacobian(mu) : central_difference_jacobian(f, mu);
    Vector fmu = f(mu);
    if (!F.allFinite() || !fmu.allFinite()) {
        throw NonFiniteValue("jacobian_linearize: NaN/Inf at expansion point");
    }

    SlrResult out;
    out.F = std::move(F);
    out.mu_R = std::move(fmu);
    out.b = out.mu_R - out.F * mu;
    out.Lambda = Matrix::Zero(n, n);
    out.S = detail::symmetrize(out.F * prev.covariance() * out.F.transpose() + Q);
    out.C = prev.covariance() * out.F.transpose();
    return out;
}

GaussianBelief marginal_predictive(const SlrResult& slr) {
    return GaussianBelief::from_moments(slr.mu_R, slr.S);
}

Matrix central_difference_jacobian(const StateFn& f, const Vector& x) {
    const int n = static_cast<int>(x.size());
    const int m = static_cast<int>(f(x).size());
    Matrix J(m, n);
    for (int j = 0; j < n; ++j) {
        const double step = 1e-6 * (1.0 + std::abs(x[j]));
        Vector xp = x, xm = x;
        xp[j] += step;
        xm[j] -= step;
        J.col(j) = (f(xp) - f(xm)) / (2.0 * step);
    }
    return J;
}

} // namespace sgvi
