#include "sgvi/models.hpp"

#include <cmath>

namespace sgvi {

SystemModel benchmark_1d(double q, double r) {
    if (q <= 0.0 || r <= 0.0) throw Error("benchmark_1d: Q and R must be positive");

    SystemModel m;
    m.dim = Dim{1, 1};
    m.transition.n_x = 1;
    m.transition.f = [](const Vector& x, int t) {
        Vector out(1);
        const double xv = x[0];
        out[0] = 0.9 * xv + 10.0 * xv / (1.0 + xv * xv) + 8.0 * std::cos(1.2 * (t - 1));
        return out;
    };
    m.transition.Q = [q](const Vector&, int) { return Matrix::Constant(1, 1, q); };
    m.transition.f_jacobian = [](const Vector& x, int) {
        const double xv = x[0];
        const double d = 1.0 + xv * xv;
        return Matrix::Constant(1, 1, 0.9 + 10.0 * (1.0 - xv * xv) / (d * d));
    };

    m.measurement.n_z = 1;
    m.measurement.h = [](const Vector& x) { return Vector::Constant(1, 0.05 * x[0] * x[0] * x[0]); };
    m.measurement.h_jacobian = [](const Vector& x) { return Matrix::Constant(1, 1, 0.15 * x[0] * x[0]); };
    m.measurement.R = Matrix::Constant(1, 1, r);

    m.prior_mean = Vector::Constant(1, 5.0);
    m.prior_cov = Matrix::Constant(1, 1, 4.0);
    return m;
}

namespace {

// Position increment of the polar-velocity turn model; switches to the
// w -> 0 limit below 1e-6 rad/s to avoid cancellation in 2v/w sin(wT/2).
inline void turn_increment(double v, double h, double w, double T, double& dx, double& dy) {
    const double phase = h + 0.5 * w * T;
    if (std::abs(w) < 1e-6) {
        dx = v * T * std::cos(phase);
        dy = v * T * std::sin(phase);
    } else {
        const double chord = 2.0 * v / w * std::sin(0.5 * w * T);
        dx = chord * std::cos(phase);
        dy = chord * std::sin(phase);
    }
}

} // namespace

TransitionModel coordinated_turn(double T, double q_a, double q_alpha) {
    if (T <= 0.0 || q_a <= 0.0 || q_alpha <= 0.0) {
        throw Error("coordinated_turn: T, Q_a, Q_alpha must be positive");
    }

    TransitionModel m;
    m.n_x = 5;
    m.f = [T](const Vector& x, int) {
        Vector out(5);
        double dx, dy;
        turn_increment(x[2], x[3], x[4], T, dx, dy);
        out[0] = x[0] + dx;
        out[1] = x[1] + dy;
        out[2] = x[2];
        out[3] = x[3] + x[4] * T;
        out[4] = x[4];
        return out;
    };
    m.Q = [T, q_a, q_alpha](const Vector& x, int) {
        const double h = x[3];
        Eigen::Matrix<double, 5, 2> G;
        G << 0.5 * T * T * std::cos(h), 0.0,
             0.5 * T * T * std::sin(h), 0.0,
             T, 0.0,
             0.0, 0.5 * T * T,
             0.0, T;
        Eigen::Matrix2d noise = Eigen::Vector2d(q_a, q_alpha).asDiagonal();
        Matrix Q = G * noise * G.transpose();
        Q += 1e-12 * Matrix::Identity(5, 5);  // shaping alone is rank 2
        return Q;
    };
    // No analytic Jacobian; consumers use central differences.
    return m;
}

MeasurementModel range_measurements(const std::vector<Eigen::Vector2d>& anchors, double r_sigma,
                                    int n_x) {
    if (anchors.empty()) throw Error("range_measurements: need at least one anchor");
    if (r_sigma <= 0.0) throw Error("range_measurements: R_sigma must be positive");
    if (n_x < 2) throw DimensionMismatch("range_measurements: state needs (x, y) components");

    const int n_z = static_cast<int>(anchors.size());
    MeasurementModel m;
    m.n_z = n_z;
    m.h = [anchors, n_z](const Vector& x) {
        Vector z(n_z);
        const Eigen::Vector2d p(x[0], x[1]);
        for (int l = 0; l < n_z; ++l) z[l] = (anchors[l] - p).norm();
        return z;
    };
    m.h_jacobian = [anchors, n_z, n_x](const Vector& x) {
        Matrix J = Matrix::Zero(n_z, n_x);
        const Eigen::Vector2d p(x[0], x[1]);
        for (int l = 0; l < n_z; ++l) {
            const Eigen::Vector2d d = p - anchors[l];
            const double range = d.norm();
            if (range < 1e-9) {
                throw AnchorCoincidence("range Jacobian undefined at anchor " + std::to_string(l));
            }
            J(l, 0) = d.x() / range;
            J(l, 1) = d.y() / range;
        }
        return J;
    };
    m.R = r_sigma * r_sigma * Matrix::Identity(n_z, n_z);
    return m;
}

SystemModel from_linear(const LinearModel& lin, const Vector& prior_mean, const Matrix& prior_cov) {
    const int n_x = static_cast<int>(lin.A.rows());
    const int n_z = static_cast<int>(lin.H.rows());
    if (lin.A.cols() != n_x || lin.H.cols() != n_x || lin.Q.rows() != n_x ||
        lin.Q.cols() != n_x || lin.R.rows() != n_z || lin.R.cols() != n_z) {
        throw DimensionMismatch("from_linear: inconsistent model dimensions");
    }

    SystemModel m;
    m.dim = Dim{n_x, n_z};
    m.transition.n_x = n_x;
    m.transition.f = [A = lin.A](const Vector& x, int) -> Vector { return A * x; };
    m.transition.Q = [Q = lin.Q](const Vector&, int) { return Q; };
    m.transition.f_jacobian = [A = lin.A](const Vector&, int) { return A; };
    m.measurement.n_z = n_z;
    m.measurement.h = [H = lin.H](const Vector& x) -> Vector { return H * x; };
    m.measurement.h_jacobian = [H = lin.H](const Vector&) { return H; };
    m.measurement.R = lin.R;
    m.prior_mean = prior_mean;
    m.prior_cov = prior_cov;
    m.linear = lin;
    return m;
}

} // namespace sgvi
