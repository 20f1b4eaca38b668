#ifndef SGVI_METRICS_HPP
#define SGVI_METRICS_HPP

#include "sgvi/simulation.hpp"

namespace sgvi {

/// Per-step evaluation against ground truth.
struct StepMetrics {
    Vector error;                   // estimate - truth
    double position_error_norm = 0; // over the designated components
    double nees = 0;
    std::vector<bool> in_3sigma;
};

/// sqrt of the mean (over trials x steps) squared error norm restricted to
/// `components`. Traces and trials must be aligned; failed runs are the
/// caller's responsibility to filter.
double rmse(const std::vector<EstimationTrace>& traces, const std::vector<Trial>& trials,
            const std::vector<int>& components);

/// e^T Sigma_marg^-1 e over the component block.
double nees(const GaussianBelief& estimate, const Vector& truth, const std::vector<int>& components);

/// Trajectory average of the per-step component-block NEES.
double mean_nees(const std::vector<EstimationTrace>& traces, const std::vector<Trial>& trials,
                 const std::vector<int>& components);

/// Per-component fraction of steps with |error_i| > k * sqrt(Sigma_ii).
std::vector<double> sigma_bound_violations(const EstimationTrace& trace,
                                           const std::vector<Vector>& truth, double k);

double mean_iterations(const std::vector<EstimationTrace>& traces);

/// Two-sided chi-square acceptance interval for a 2-dof NEES at the given
/// significance level (default 5%): [-2 ln(1 - a/2), -2 ln(a/2)].
struct NeesInterval {
    double lo = 0.0;
    double hi = 0.0;
};
NeesInterval nees_acceptance_interval_2d(double significance = 0.05);

StepMetrics step_metrics(const GaussianBelief& estimate, const Vector& truth,
                         const std::vector<int>& components, double k = 3.0);

} // namespace sgvi

#endif
