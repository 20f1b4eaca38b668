#ifndef SGVI_TOOLS_CONFIG_HPP
#define SGVI_TOOLS_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "sgvi/simulation.hpp"

namespace sgvi::cli {

class ConfigParse : public Error {
public:
    explicit ConfigParse(const std::string& what) : Error(what) {}
};

class ConfigValidation : public Error {
public:
    explicit ConfigValidation(const std::string& what) : Error(what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

enum class ScenarioKind { Benchmark1d, CoordinatedTurn, Linear, CustomLinear };

/// Parsed experiment file. Solver defaults are pre-filled; scenario noise for
/// the scalar benchmark must be stated explicitly.
struct ExperimentConfig {
    ScenarioKind scenario = ScenarioKind::Benchmark1d;
    int trials = 100;
    int steps = 50;
    std::uint64_t seed = 0;
    std::string output = "out";
    std::vector<std::string> estimators = {"sgvi", "map"};
    int threads = 1;

    // solver
    double step_size = 1.0;
    double epsilon = 0.02;
    int max_iters = 50;
    double alpha = 1.0;
    double beta_s = 0.1;
    std::optional<double> kappa;  // nullopt: 3 - n_x

    // scalar benchmark noise (required when scenario = benchmark1d)
    std::optional<double> q1d;
    std::optional<double> r1d;

    // coordinated turn + ranges
    double period = 0.1;
    double q_a = 4.0;        // 2.0^2
    double q_alpha = 1e-4;   // 0.01^2
    double r_sigma = 0.5;
    std::vector<Eigen::Vector2d> anchors = {{-8.0, -8.0}, {8.0, -8.0}, {0.0, 8.0}};
    bool mismatch = false;
    int segment_steps = 30;
    double speed_min = 0.5;
    double speed_max = 1.5;
    double turn_rate_max = 1.0;

    // prior override
    std::optional<Vector> prior_mean;
    std::optional<Vector> prior_cov_diag;

    // custom-linear
    std::optional<LinearModel> custom_linear;
};

ExperimentConfig load_config(const std::string& path);
void validate_config(const ExperimentConfig& cfg);

/// Everything cmd_run needs, resolved from a validated config.
struct ExperimentPlan {
    Scenario scenario;
    std::vector<EstimatorSpec> specs;
    std::vector<int> metric_components;  // error/NEES block (position for CT)
    std::string output_dir;
    int threads = 1;
};

ExperimentPlan build_plan(const ExperimentConfig& cfg);

std::string describe_plan(const ExperimentConfig& cfg, const ExperimentPlan& plan);

const std::vector<std::string>& known_estimators();

} // namespace sgvi::cli

#endif
