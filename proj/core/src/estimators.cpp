#include "sgvi/estimators.hpp"

#include <cassert>
#include <chrono>
#include <cmath>

namespace sgvi {

namespace {

Matrix invert_spd(const Matrix& m, const char* what) {
    Eigen::LLT<Matrix> llt(detail::symmetrize(m));
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite(std::string(what) + " is not positive definite");
    }
    return llt.solve(Matrix::Identity(m.rows(), m.cols()));
}

// max_i |delta_i| / max(|prev_i|, 1e-8)
double relative_change(const Vector& prev, const Vector& next) {
    double worst = 0.0;
    for (int i = 0; i < prev.size(); ++i) {
        worst = std::max(worst, std::abs(next[i] - prev[i]) / std::max(std::abs(prev[i]), 1e-8));
    }
    return worst;
}

double relative_change_frob(const Matrix& prev, const Matrix& next) {
    return (next - prev).norm() / prev.norm();
}

SlrResult linearize_transition(const GaussianBelief& prev, const SystemModel& model,
                               const SgviConfig& cfg, int t) {
    const auto& tr = model.transition;
    StateFn f_t = [&tr, t](const Vector& x) { return tr.f(x, t); };
    const Matrix Q = tr.Q(prev.mean(), t);
    if (cfg.linearization == Linearization::Slr) {
        return slr_linearize(f_t, Q, prev, cfg.ut);
    }
    JacobianFn jac;
    if (tr.f_jacobian) jac = [&tr, t](const Vector& x) { return tr.f_jacobian(x, t); };
    return jacobian_linearize(f_t, jac, Q, prev);
}

} // namespace

UpdateResult sgvi_update(const GaussianBelief& prev, const Vector& z, const SystemModel& model,
                         const SgviConfig& cfg, int t) {
    const auto start = std::chrono::steady_clock::now();
    const int n = prev.dim();
    if (z.size() != model.measurement.n_z) {
        throw DimensionMismatch("sgvi_update: measurement length mismatch");
    }
    if (cfg.step_size <= 0.0 || cfg.step_size > 1.0) {
        throw Error("sgvi_update: step size must be in (0, 1]");
    }
    if (cfg.epsilon <= 0.0) throw Error("sgvi_update: epsilon must be positive");
    const double beta = cfg.step_size;

    const SlrResult slr = linearize_transition(prev, model, cfg, t);
    const Matrix S_inv = invert_spd(slr.S, "sgvi_update: predictive covariance S");
    const Matrix R_inv = invert_spd(model.measurement.R, "sgvi_update: R");
    const auto& h = model.measurement.h;
    const auto& h_jac = model.measurement.h_jacobian;

    Vector mu = prev.mean();
    Matrix prec = prev.precision();
    Matrix cov = prev.covariance();

    int iterations = 0;
    bool converged = false;
    while (iterations < cfg.max_iters) {
        ++iterations;
        const SigmaPointSet sigma =
            generate_sigma_points(GaussianBelief::from_moments(mu, cov), cfg.ut);

        Matrix info_gain = Matrix::Zero(n, n);
        Vector grad = Vector::Zero(n);
        for (int i = 0; i < sigma.size(); ++i) {
            const Vector& x = sigma.points[i];
            const Matrix H = h_jac(x);
            const Matrix HtRinv = H.transpose() * R_inv;
            const double w = sigma.mean_weights[i];
            info_gain += w * HtRinv * H;
            grad += w * HtRinv * (z - h(x));
        }
        if (!info_gain.allFinite() || !grad.allFinite()) {
            throw NonFiniteValue("sgvi_update: non-finite expectation");
        }

        const Matrix prec_next =
            detail::symmetrize((1.0 - beta) * prec + beta * (info_gain + S_inv));
        const Matrix cov_next = invert_spd(prec_next, "sgvi_update: iterate precision");
        const Vector mu_next = mu + beta * cov_next * (grad + S_inv * (slr.mu_R - mu));
        if (!mu_next.allFinite()) throw NonFiniteValue("sgvi_update: non-finite mean iterate");

        const double e_mu = relative_change(mu, mu_next);
        const double e_prec = relative_change_frob(prec, prec_next);
        mu = mu_next;
        prec = prec_next;
        cov = detail::symmetrize(cov_next);
        if (e_mu <= cfg.epsilon && e_prec <= cfg.epsilon) {
            converged = true;
            break;
        }
    }

    UpdateResult out{GaussianBelief::from_moments(mu, cov), iterations, converged, 0.0};
    out.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

UpdateResult iekf_map_update(const GaussianBelief& prev, const Vector& z, const SystemModel& model,
                             const SgviConfig& cfg, int t) {
    const auto start = std::chrono::steady_clock::now();
    const int n = prev.dim();
    if (z.size() != model.measurement.n_z) {
        throw DimensionMismatch("iekf_map_update: measurement length mismatch");
    }
    const auto& tr = model.transition;
    StateFn f_t = [&tr, t](const Vector& x) { return tr.f(x, t); };
    const Matrix F = tr.f_jacobian ? tr.f_jacobian(prev.mean(), t)
                                   : central_difference_jacobian(f_t, prev.mean());
    const Vector mu_pred = f_t(prev.mean());
    const Matrix Q = tr.Q(prev.mean(), t);
    const Matrix P_pred = detail::symmetrize(F * prev.covariance() * F.transpose() + Q);
    if (!mu_pred.allFinite() || !P_pred.allFinite()) {
        throw NonFiniteValue("iekf_map_update: non-finite prediction");
    }

    const auto& h = model.measurement.h;
    const auto& h_jac = model.measurement.h_jacobian;
    const Matrix& R = model.measurement.R;

    Vector x = mu_pred;
    Matrix H = h_jac(x);
    Matrix K;
    int iterations = 0;
    bool converged = false;
    while (iterations < cfg.max_iters) {
        ++iterations;
        H = h_jac(x);
        const Matrix innov_cov = H * P_pred * H.transpose() + R;
        K = innov_cov.ldlt().solve(H * P_pred).transpose();
        const Vector x_next = mu_pred + K * (z - h(x) - H * (mu_pred - x));
        if (!x_next.allFinite()) throw NonFiniteValue("iekf_map_update: non-finite iterate");
        const double e = relative_change(x, x_next);
        x = x_next;
        if (e <= cfg.epsilon) {
            converged = true;
            break;
        }
    }

    // Joseph form at the converged point; equals (I - KH) P_pred for the
    // gain computed above.
    const Matrix IKH = Matrix::Identity(n, n) - K * H;
    const Matrix P = detail::symmetrize(IKH * P_pred * IKH.transpose() + K * R * K.transpose());

    UpdateResult out{GaussianBelief::from_moments(x, P), iterations, converged, 0.0};
    out.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

GaussianBelief information_filter_update(const GaussianBelief& prev, const Vector& z,
                                         const LinearModel& model) {
    const Matrix P_pred = detail::symmetrize(model.A * prev.covariance() * model.A.transpose() + model.Q);
    const Matrix P_pred_inv = invert_spd(P_pred, "information_filter_update: predicted covariance");
    const Matrix R_inv = invert_spd(model.R, "information_filter_update: R");
    const Matrix prec = model.H.transpose() * R_inv * model.H + P_pred_inv;
    const Vector shifted = model.H.transpose() * R_inv * z + P_pred_inv * model.A * prev.mean();
    return GaussianBelief::from_canonical(prec, shifted);
}

double linear_cost(const GaussianBelief& theta, const GaussianBelief& prev, const Vector& z,
                   const LinearModel& model) {
    const Matrix P_pred = detail::symmetrize(model.A * prev.covariance() * model.A.transpose() + model.Q);
    const Matrix P_pred_inv = invert_spd(P_pred, "linear_cost: predicted covariance");
    const Matrix R_inv = invert_spd(model.R, "linear_cost: R");

    const Vector innov = z - model.H * theta.mean();
    const Vector dmu = theta.mean() - model.A * prev.mean();
    const double data_term =
        (R_inv * (innov * innov.transpose() + model.H * theta.covariance() * model.H.transpose()))
            .trace();
    const double prior_term =
        (P_pred_inv * (dmu * dmu.transpose() + theta.covariance())).trace();

    Eigen::LLT<Matrix> llt(theta.precision());
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite("linear_cost: precision is not positive definite");
    }
    double log_det_prec = 0.0;
    const Matrix L = llt.matrixL();
    for (int i = 0; i < L.rows(); ++i) log_det_prec += 2.0 * std::log(L(i, i));

    return 0.5 * (data_term + prior_term + log_det_prec);
}

EstimationTrace run_sequential(EstimatorKind estimator, const GaussianBelief& initial,
                               const std::vector<Vector>& measurements, const SystemModel& model,
                               const SgviConfig& cfg) {
    if (measurements.empty()) throw Error("run_sequential: measurement list is empty");
    if (estimator == EstimatorKind::InformationFilter && !model.linear) {
        throw Error("run_sequential: information filter requires a linear model");
    }

    EstimationTrace trace;
    trace.steps.reserve(measurements.size());
    GaussianBelief belief = initial;
    for (size_t i = 0; i < measurements.size(); ++i) {
        const int t = static_cast<int>(i) + 1;
        switch (estimator) {
            case EstimatorKind::Sgvi: {
                UpdateResult r = sgvi_update(belief, measurements[i], model, cfg, t);
                belief = r.belief;
                trace.steps.push_back({r.belief, r.iterations, r.converged, r.elapsed});
                break;
            }
            case EstimatorKind::Map: {
                UpdateResult r = iekf_map_update(belief, measurements[i], model, cfg, t);
                belief = r.belief;
                trace.steps.push_back({r.belief, r.iterations, r.converged, r.elapsed});
                break;
            }
            case EstimatorKind::InformationFilter: {
                const auto start = std::chrono::steady_clock::now();
                belief = information_filter_update(belief, measurements[i], *model.linear);
                const double dt =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                trace.steps.push_back({belief, 1, true, dt});
                break;
            }
        }
    }
    return trace;
}

} // namespace sgvi
