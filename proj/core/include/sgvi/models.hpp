#ifndef SGVI_MODELS_HPP
#define SGVI_MODELS_HPP

#include <functional>
#include <optional>
#include <vector>

#include "sgvi/gaussian.hpp"

namespace sgvi {

/// x_t = f(x_{t-1}, t) + v, v ~ N(0, Q(x_{t-1}, t)). The time index t is the
/// 1-based step being produced. f_jacobian may be empty; consumers fall back
/// to central differences.
struct TransitionModel {
    int n_x = 0;
    std::function<Vector(const Vector&, int)> f;
    std::function<Matrix(const Vector&, int)> Q;
    std::function<Matrix(const Vector&, int)> f_jacobian;
};

/// z = h(x) + r, r ~ N(0, R).
struct MeasurementModel {
    int n_z = 0;
    std::function<Vector(const Vector&)> h;
    std::function<Matrix(const Vector&)> h_jacobian;
    Matrix R;
};

/// x_t = A x_{t-1} + v, z_t = H x_t + r.
struct LinearModel {
    Matrix A;
    Matrix H;
    Matrix Q;
    Matrix R;
};

/// Paired transition/measurement description plus the prior belief. `linear`
/// is set when the system is exactly linear, enabling the closed-form filter.
struct SystemModel {
    Dim dim;
    TransitionModel transition;
    MeasurementModel measurement;
    Vector prior_mean;
    Matrix prior_cov;
    std::optional<LinearModel> linear;
};

/// Scalar benchmark: f(x,t) = 0.9x + 10x/(1+x^2) + 8cos(1.2(t-1)),
/// h(x) = 0.05x^3, prior N(5, 2^2).
SystemModel benchmark_1d(double q, double r);

/// 5-state [x, y, v, h, w] coordinated turn with polar velocity, sampling
/// period T. Q is the rank-2 acceleration-noise shaping plus 1e-12 I jitter.
TransitionModel coordinated_turn(double T, double q_a, double q_alpha);

/// Stacked anchor ranges ||anchor_l - (x, y)||_2 with R = r_sigma^2 I.
/// Throws AnchorCoincidence from h_jacobian when the position is within
/// 1e-9 of an anchor.
MeasurementModel range_measurements(const std::vector<Eigen::Vector2d>& anchors, double r_sigma,
                                    int n_x = 5);

/// SystemModel wrapper for a LinearModel with the given prior.
SystemModel from_linear(const LinearModel& lin, const Vector& prior_mean, const Matrix& prior_cov);

} // namespace sgvi

#endif
