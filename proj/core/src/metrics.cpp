#include "sgvi/metrics.hpp"

#include <cmath>

namespace sgvi {

namespace {

Vector component_error(const Vector& estimate, const Vector& truth, const std::vector<int>& comps) {
    Vector e(comps.size());
    for (size_t i = 0; i < comps.size(); ++i) e[i] = estimate[comps[i]] - truth[comps[i]];
    return e;
}

Matrix marginal_block(const Matrix& cov, const std::vector<int>& comps) {
    Matrix block(comps.size(), comps.size());
    for (size_t i = 0; i < comps.size(); ++i)
        for (size_t j = 0; j < comps.size(); ++j) block(i, j) = cov(comps[i], comps[j]);
    return block;
}

} // namespace

double rmse(const std::vector<EstimationTrace>& traces, const std::vector<Trial>& trials,
            const std::vector<int>& components) {
    if (traces.size() != trials.size()) {
        throw LengthMismatch("rmse: trace/trial count mismatch");
    }
    double sum = 0.0;
    long count = 0;
    for (size_t i = 0; i < traces.size(); ++i) {
        if (traces[i].steps.size() != trials[i].truth.size()) {
            throw LengthMismatch("rmse: step count mismatch");
        }
        for (size_t t = 0; t < traces[i].steps.size(); ++t) {
            const Vector e =
                component_error(traces[i].steps[t].belief.mean(), trials[i].truth[t], components);
            sum += e.squaredNorm();
            ++count;
        }
    }
    return std::sqrt(sum / static_cast<double>(count));
}

double nees(const GaussianBelief& estimate, const Vector& truth, const std::vector<int>& components) {
    const Vector e = component_error(estimate.mean(), truth, components);
    const Matrix block = marginal_block(estimate.covariance(), components);
    Eigen::LLT<Matrix> llt(block);
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite("nees: marginal covariance is not positive definite");
    }
    return e.dot(llt.solve(e));
}

double mean_nees(const std::vector<EstimationTrace>& traces, const std::vector<Trial>& trials,
                 const std::vector<int>& components) {
    if (traces.size() != trials.size()) {
        throw LengthMismatch("mean_nees: trace/trial count mismatch");
    }
    double sum = 0.0;
    long count = 0;
    for (size_t i = 0; i < traces.size(); ++i) {
        for (size_t t = 0; t < traces[i].steps.size(); ++t) {
            sum += nees(traces[i].steps[t].belief, trials[i].truth[t], components);
            ++count;
        }
    }
    return sum / static_cast<double>(count);
}

std::vector<double> sigma_bound_violations(const EstimationTrace& trace,
                                           const std::vector<Vector>& truth, double k) {
    if (trace.steps.size() != truth.size()) {
        throw LengthMismatch("sigma_bound_violations: step count mismatch");
    }
    const int n = trace.steps.front().belief.dim();
    std::vector<double> rate(n, 0.0);
    for (size_t t = 0; t < trace.steps.size(); ++t) {
        const auto& belief = trace.steps[t].belief;
        for (int i = 0; i < n; ++i) {
            const double err = std::abs(belief.mean()[i] - truth[t][i]);
            if (err > k * std::sqrt(belief.covariance()(i, i))) rate[i] += 1.0;
        }
    }
    for (double& r : rate) r /= static_cast<double>(trace.steps.size());
    return rate;
}

double mean_iterations(const std::vector<EstimationTrace>& traces) {
    double sum = 0.0;
    long count = 0;
    for (const auto& trace : traces) {
        for (const auto& step : trace.steps) {
            sum += step.iterations;
            ++count;
        }
    }
    return sum / static_cast<double>(count);
}

NeesInterval nees_acceptance_interval_2d(double significance) {
    // chi-square with 2 dof is Exp(1/2), so quantiles are closed form
    return {-2.0 * std::log(1.0 - significance / 2.0), -2.0 * std::log(significance / 2.0)};
}

StepMetrics step_metrics(const GaussianBelief& estimate, const Vector& truth,
                         const std::vector<int>& components, double k) {
    StepMetrics m;
    m.error = estimate.mean() - truth;
    double pos2 = 0.0;
    for (int c : components) pos2 += m.error[c] * m.error[c];
    m.position_error_norm = std::sqrt(pos2);
    m.nees = nees(estimate, truth, components);
    m.in_3sigma.resize(estimate.dim());
    for (int i = 0; i < estimate.dim(); ++i) {
        m.in_3sigma[i] = std::abs(m.error[i]) <= k * std::sqrt(estimate.covariance()(i, i));
    }
    return m;
}

} // namespace sgvi
