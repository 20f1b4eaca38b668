#include "sgvi/simulation.hpp"

#include <cmath>
#include <thread>

namespace sgvi {

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_trial_seed(std::uint64_t seed, int trial_index) {
    return mix64(mix64(seed) ^ mix64(static_cast<std::uint64_t>(trial_index) + 1));
}

Vector sample_gaussian(const Vector& mean, const Matrix& cov, std::mt19937_64& rng) {
    std::normal_distribution<double> unit(0.0, 1.0);
    Vector xi(mean.size());
    for (int i = 0; i < xi.size(); ++i) xi[i] = unit(rng);
    return mean + sqrt_factor(cov) * xi;
}

Trial simulate_trial(const Scenario& scenario, int trial_index) {
    if (scenario.steps < 1) throw Error("simulate_trial: steps must be >= 1");
    const auto& model = scenario.model;
    Trial trial;
    trial.seed = derive_trial_seed(scenario.seed, trial_index);
    std::mt19937_64 rng(trial.seed);

    if (scenario.truth_generator) {
        trial.truth = scenario.truth_generator(scenario.steps, rng);
        if (static_cast<int>(trial.truth.size()) != scenario.steps) {
            throw LengthMismatch("simulate_trial: truth generator returned wrong length");
        }
    } else {
        Vector x = scenario.initial_truth
                       ? *scenario.initial_truth
                       : sample_gaussian(model.prior_mean, model.prior_cov, rng);
        trial.truth.reserve(scenario.steps);
        for (int t = 1; t <= scenario.steps; ++t) {
            const Matrix Q = model.transition.Q(x, t);
            x = model.transition.f(x, t) + sample_gaussian(Vector::Zero(x.size()), Q, rng);
            if (!x.allFinite()) throw NonFiniteValue("simulate_trial: divergent rollout");
            trial.truth.push_back(x);
        }
    }

    trial.measurements.reserve(scenario.steps);
    const Vector zero_z = Vector::Zero(model.measurement.n_z);
    for (int t = 0; t < scenario.steps; ++t) {
        Vector z = model.measurement.h(trial.truth[t]) +
                   sample_gaussian(zero_z, model.measurement.R, rng);
        if (!z.allFinite()) throw NonFiniteValue("simulate_trial: non-finite measurement");
        trial.measurements.push_back(std::move(z));
    }
    return trial;
}

MonteCarloResult run_monte_carlo(const Scenario& scenario,
                                 const std::vector<EstimatorSpec>& estimators, int threads) {
    if (scenario.trials < 1) throw Error("run_monte_carlo: trials must be >= 1");
    MonteCarloResult result;
    result.trials.resize(scenario.trials);
    result.runs.assign(estimators.size(), std::vector<TrialRun>(scenario.trials));

    const GaussianBelief prior =
        GaussianBelief::from_moments(scenario.model.prior_mean, scenario.model.prior_cov);

    auto run_trial = [&](int i) {
        try {
            result.trials[i] = simulate_trial(scenario, i);
        } catch (const Error& err) {
            for (size_t e = 0; e < estimators.size(); ++e) {
                result.runs[e][i].ok = false;
                result.runs[e][i].error = err.what();
            }
            return;
        }
        for (size_t e = 0; e < estimators.size(); ++e) {
            TrialRun& run = result.runs[e][i];
            try {
                run.trace = run_sequential(estimators[e].kind, prior,
                                           result.trials[i].measurements, scenario.model,
                                           estimators[e].cfg);
                run.ok = true;
            } catch (const Error& err) {
                run.ok = false;
                run.error = err.what();
            }
        }
    };

    const int workers = std::max(1, threads);
    if (workers == 1) {
        for (int i = 0; i < scenario.trials; ++i) run_trial(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int i = w; i < scenario.trials; i += workers) run_trial(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    return result;
}

std::function<std::vector<Vector>(int, std::mt19937_64&)>
make_piecewise_turn_truth(const Vector& initial_state, double T, int segment_steps,
                          double speed_min, double speed_max, double turn_rate_max) {
    if (segment_steps < 1) throw Error("make_piecewise_turn_truth: segment_steps must be >= 1");
    return [=](int steps, std::mt19937_64& rng) {
        std::uniform_real_distribution<double> speed(speed_min, speed_max);
        std::uniform_real_distribution<double> turn(-turn_rate_max, turn_rate_max);
        Vector x = initial_state;
        std::vector<Vector> truth;
        truth.reserve(steps);
        for (int t = 0; t < steps; ++t) {
            if (t % segment_steps == 0) {
                x[2] = speed(rng);
                x[4] = turn(rng);
            }
            const double v = x[2], h = x[3], w = x[4];
            const double phase = h + 0.5 * w * T;
            const double chord = std::abs(w) < 1e-6 ? v * T : 2.0 * v / w * std::sin(0.5 * w * T);
            x[0] += chord * std::cos(phase);
            x[1] += chord * std::sin(phase);
            x[3] = h + w * T;
            truth.push_back(x);
        }
        return truth;
    };
}

} // namespace sgvi
