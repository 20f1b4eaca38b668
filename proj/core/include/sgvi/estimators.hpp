#ifndef SGVI_ESTIMATORS_HPP
#define SGVI_ESTIMATORS_HPP

#include <vector>

#include "sgvi/models.hpp"
#include "sgvi/quadrature.hpp"
#include "sgvi/slr.hpp"

namespace sgvi {

enum class Linearization { Slr, Jacobian };

enum class EstimatorKind { Sgvi, Map, InformationFilter };

struct SgviConfig {
    double step_size = 1.0;     // beta, in (0, 1]
    double epsilon = 0.02;      // relative-change termination threshold
    int max_iters = 50;
    UnscentedParams ut;         // kappa must already be resolved for n_x
    Linearization linearization = Linearization::Slr;

    static SgviConfig defaults_for(int n_x) {
        SgviConfig cfg;
        cfg.ut = UnscentedParams::defaults_for(n_x);
        return cfg;
    }
};

struct UpdateResult {
    GaussianBelief belief;
    int iterations = 0;
    bool converged = false;
    double elapsed = 0.0;  // seconds
};

/// One natural-gradient variational update: statistically linearize the
/// transition about `prev` once, then iterate the precision/mean updates with
/// sigma-point expectations regenerated from the current iterate until the
/// relative change of both the mean and the precision drops below epsilon.
/// Hitting max_iters returns converged=false rather than throwing.
UpdateResult sgvi_update(const GaussianBelief& prev, const Vector& z, const SystemModel& model,
                         const SgviConfig& cfg, int t = 1);

/// Iterated-EKF MAP baseline: first-order prediction at the mean, then
/// Gauss-Newton iterations on the correction step.
UpdateResult iekf_map_update(const GaussianBelief& prev, const Vector& z, const SystemModel& model,
                             const SgviConfig& cfg, int t = 1);

/// Closed-form precision-form update for linear-Gaussian models.
GaussianBelief information_filter_update(const GaussianBelief& prev, const Vector& z,
                                         const LinearModel& model);

/// Variational objective of a linear-Gaussian step, up to an additive
/// constant independent of theta.
double linear_cost(const GaussianBelief& theta, const GaussianBelief& prev, const Vector& z,
                   const LinearModel& model);

/// One step of an estimation trace.
struct StepRecord {
    GaussianBelief belief;
    int iterations = 0;
    bool converged = false;
    double elapsed = 0.0;
};

struct EstimationTrace {
    std::vector<StepRecord> steps;
};

/// Folds the chosen per-step update over the measurement sequence. The time
/// index passed to the transition is 1-based. Deterministic: no RNG inside.
EstimationTrace run_sequential(EstimatorKind estimator, const GaussianBelief& initial,
                               const std::vector<Vector>& measurements, const SystemModel& model,
                               const SgviConfig& cfg);

} // namespace sgvi

#endif
