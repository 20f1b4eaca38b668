#ifndef SGVI_SIMULATION_HPP
#define SGVI_SIMULATION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "sgvi/estimators.hpp"

namespace sgvi {

/// Experiment description. When `truth_generator` is set, it replaces the
/// model rollout for ground truth (measurements are still synthesized from
/// the model's measurement description).
struct Scenario {
    SystemModel model;
    std::optional<Vector> initial_truth;  // nullopt: sample from the prior
    int steps = 1;
    int trials = 1;
    std::uint64_t seed = 0;
    std::function<std::vector<Vector>(int steps, std::mt19937_64&)> truth_generator;
};

struct Trial {
    std::vector<Vector> truth;         // x_1 .. x_steps
    std::vector<Vector> measurements;  // z_1 .. z_steps
    std::uint64_t seed = 0;            // the derived per-trial stream seed
};

/// Deterministic per-trial RNG stream: mixes (seed, trial_index) so trials
/// are order-independent and reproducible.
std::uint64_t derive_trial_seed(std::uint64_t seed, int trial_index);

Trial simulate_trial(const Scenario& scenario, int trial_index);

/// Draw from N(mean, cov) using the lower-triangular covariance factor.
Vector sample_gaussian(const Vector& mean, const Matrix& cov, std::mt19937_64& rng);

struct EstimatorSpec {
    std::string name;
    EstimatorKind kind = EstimatorKind::Sgvi;
    SgviConfig cfg;
};

/// Outcome of one estimator on one trial. Failed runs carry the error text
/// and are excluded from metric aggregation by callers.
struct TrialRun {
    bool ok = false;
    std::string error;
    EstimationTrace trace;
};

struct MonteCarloResult {
    std::vector<Trial> trials;
    // runs[e][i]: estimator e on trial i. All estimators see identical
    // measurement sequences (paired design).
    std::vector<std::vector<TrialRun>> runs;
};

MonteCarloResult run_monte_carlo(const Scenario& scenario,
                                 const std::vector<EstimatorSpec>& estimators,
                                 int threads = 1);

/// Coordinated-turn ground truth with piecewise-constant speed and turn rate
/// redrawn every `segment_steps`; stresses estimators with motion the model's
/// process noise cannot fully explain.
std::function<std::vector<Vector>(int, std::mt19937_64&)>
make_piecewise_turn_truth(const Vector& initial_state, double T, int segment_steps,
                          double speed_min, double speed_max, double turn_rate_max);

} // namespace sgvi

#endif
