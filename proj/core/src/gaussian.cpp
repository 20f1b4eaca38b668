#include "sgvi/gaussian.hpp"

#include <cmath>

namespace sgvi {

namespace {

void check_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) throw NonFiniteValue(std::string(what) + " contains NaN/Inf");
}

Matrix invert_spd(const Matrix& m, const char* what) {
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite(std::string(what) + " is not positive definite");
    }
    return llt.solve(Matrix::Identity(m.rows(), m.cols()));
}

} // namespace

Matrix sqrt_factor(const Matrix& covariance) {
    if (covariance.rows() != covariance.cols()) {
        throw DimensionMismatch("sqrt_factor: matrix is not square");
    }
    check_finite(covariance, "sqrt_factor input");
    Eigen::LLT<Matrix> llt(detail::symmetrize(covariance));
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite("sqrt_factor: covariance is not positive definite");
    }
    return llt.matrixL();
}

GaussianBelief::GaussianBelief(Vector mean, Matrix covariance, Matrix precision)
    : mean_(std::move(mean)),
      covariance_(std::move(covariance)),
      precision_(std::move(precision)) {}

GaussianBelief GaussianBelief::from_moments(const Vector& mean, const Matrix& covariance) {
    if (covariance.rows() != covariance.cols() || covariance.rows() != mean.size()) {
        throw DimensionMismatch("GaussianBelief: covariance side must equal mean length");
    }
    if (!mean.allFinite()) throw NonFiniteValue("GaussianBelief: mean contains NaN/Inf");
    check_finite(covariance, "GaussianBelief covariance");
    Matrix cov = detail::symmetrize(covariance);
    Matrix prec = invert_spd(cov, "GaussianBelief: covariance");
    return GaussianBelief(mean, std::move(cov), detail::symmetrize(prec));
}

GaussianBelief GaussianBelief::from_canonical(const Matrix& precision, const Vector& shifted_mean) {
    if (precision.rows() != precision.cols() || precision.rows() != shifted_mean.size()) {
        throw DimensionMismatch("GaussianBelief: precision side must equal shifted-mean length");
    }
    if (!shifted_mean.allFinite()) throw NonFiniteValue("GaussianBelief: shifted mean contains NaN/Inf");
    check_finite(precision, "GaussianBelief precision");
    Matrix prec = detail::symmetrize(precision);
    Matrix cov = invert_spd(prec, "GaussianBelief: precision");
    cov = detail::symmetrize(cov);
    Vector mean = cov * shifted_mean;
    return GaussianBelief(std::move(mean), std::move(cov), std::move(prec));
}

} // namespace sgvi
