#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <sstream>

namespace sgvi::cli {

namespace {

ScenarioKind parse_scenario(const std::string& name) {
    if (name == "benchmark1d") return ScenarioKind::Benchmark1d;
    if (name == "coordinated-turn") return ScenarioKind::CoordinatedTurn;
    if (name == "linear") return ScenarioKind::Linear;
    if (name == "custom-linear") return ScenarioKind::CustomLinear;
    throw ConfigValidation("unknown scenario '" + name +
                           "' (expected benchmark1d | coordinated-turn | linear | custom-linear)");
}

Vector parse_vector(const YAML::Node& node, const char* field) {
    if (!node.IsSequence()) throw ConfigParse(std::string(field) + " must be a sequence");
    Vector v(node.size());
    for (size_t i = 0; i < node.size(); ++i) v[i] = node[i].as<double>();
    return v;
}

Matrix parse_matrix(const YAML::Node& node, const char* field) {
    if (!node.IsSequence() || node.size() == 0 || !node[0].IsSequence()) {
        throw ConfigParse(std::string(field) + " must be a sequence of rows");
    }
    const size_t rows = node.size(), cols = node[0].size();
    Matrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (node[i].size() != cols) throw ConfigParse(std::string(field) + " rows differ in length");
        for (size_t j = 0; j < cols; ++j) m(i, j) = node[i][j].as<double>();
    }
    return m;
}

} // namespace

const std::vector<std::string>& known_estimators() {
    static const std::vector<std::string> names = {"sgvi", "sgvi-jacobian", "map", "ief"};
    return names;
}

ExperimentConfig load_config(const std::string& path) {
    YAML::Node root;
    try {
        root = YAML::LoadFile(path);
    } catch (const YAML::BadFile&) {
        throw IoError("cannot read config file: " + path);
    } catch (const YAML::Exception& e) {
        throw ConfigParse(std::string("config parse error: ") + e.what());
    }

    ExperimentConfig cfg;
    try {
        if (!root["scenario"]) throw ConfigValidation("missing required field: scenario");
        cfg.scenario = parse_scenario(root["scenario"].as<std::string>());
        if (root["trials"]) cfg.trials = root["trials"].as<int>();
        if (root["steps"]) cfg.steps = root["steps"].as<int>();
        if (root["seed"]) cfg.seed = root["seed"].as<std::uint64_t>();
        if (root["output"]) cfg.output = root["output"].as<std::string>();
        if (root["threads"]) cfg.threads = root["threads"].as<int>();
        if (root["estimators"]) {
            cfg.estimators.clear();
            for (const auto& e : root["estimators"]) cfg.estimators.push_back(e.as<std::string>());
        }

        if (const auto& s = root["sgvi"]) {
            if (s["step_size"]) cfg.step_size = s["step_size"].as<double>();
            if (s["epsilon"]) cfg.epsilon = s["epsilon"].as<double>();
            if (s["max_iters"]) cfg.max_iters = s["max_iters"].as<int>();
            if (s["alpha"]) cfg.alpha = s["alpha"].as<double>();
            if (s["beta_s"]) cfg.beta_s = s["beta_s"].as<double>();
            if (s["kappa"] && s["kappa"].as<std::string>() != "auto") {
                cfg.kappa = s["kappa"].as<double>();
            }
        }

        if (const auto& b = root["benchmark1d"]) {
            if (b["Q"]) cfg.q1d = b["Q"].as<double>();
            if (b["R"]) cfg.r1d = b["R"].as<double>();
        }

        if (const auto& ct = root["coordinated_turn"]) {
            if (ct["T"]) cfg.period = ct["T"].as<double>();
            if (ct["Q_a"]) cfg.q_a = ct["Q_a"].as<double>();
            if (ct["Q_alpha"]) cfg.q_alpha = ct["Q_alpha"].as<double>();
            if (ct["R_sigma"]) cfg.r_sigma = ct["R_sigma"].as<double>();
            if (ct["anchors"]) {
                cfg.anchors.clear();
                for (const auto& a : ct["anchors"]) {
                    if (!a.IsSequence() || a.size() != 2) {
                        throw ConfigParse("coordinated_turn.anchors entries must be [x, y]");
                    }
                    cfg.anchors.emplace_back(a[0].as<double>(), a[1].as<double>());
                }
            }
            if (ct["mismatch"]) cfg.mismatch = ct["mismatch"].as<bool>();
            if (ct["segment_steps"]) cfg.segment_steps = ct["segment_steps"].as<int>();
            if (ct["speed_min"]) cfg.speed_min = ct["speed_min"].as<double>();
            if (ct["speed_max"]) cfg.speed_max = ct["speed_max"].as<double>();
            if (ct["turn_rate_max"]) cfg.turn_rate_max = ct["turn_rate_max"].as<double>();
        }

        if (const auto& p = root["prior"]) {
            if (p["mean"]) cfg.prior_mean = parse_vector(p["mean"], "prior.mean");
            if (p["cov_diag"]) cfg.prior_cov_diag = parse_vector(p["cov_diag"], "prior.cov_diag");
        }

        if (const auto& lin = root["linear"]) {
            LinearModel lm;
            if (!lin["A"] || !lin["H"] || !lin["Q"] || !lin["R"]) {
                throw ConfigValidation("linear model requires fields A, H, Q, R");
            }
            lm.A = parse_matrix(lin["A"], "linear.A");
            lm.H = parse_matrix(lin["H"], "linear.H");
            lm.Q = parse_matrix(lin["Q"], "linear.Q");
            lm.R = parse_matrix(lin["R"], "linear.R");
            cfg.custom_linear = lm;
        }
    } catch (const YAML::Exception& e) {
        throw ConfigParse(std::string("config parse error: ") + e.what());
    }
    return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw ConfigValidation("trials must be >= 1");
    if (cfg.steps < 1) throw ConfigValidation("steps must be >= 1");
    if (cfg.threads < 1) throw ConfigValidation("threads must be >= 1");
    if (cfg.step_size <= 0.0 || cfg.step_size > 1.0) {
        throw ConfigValidation("sgvi.step_size must be in (0, 1]");
    }
    if (cfg.epsilon <= 0.0) throw ConfigValidation("sgvi.epsilon must be positive");
    if (cfg.max_iters < 1) throw ConfigValidation("sgvi.max_iters must be >= 1");
    if (cfg.alpha <= 0.0) throw ConfigValidation("sgvi.alpha must be positive");
    if (cfg.beta_s < 0.0) throw ConfigValidation("sgvi.beta_s must be nonnegative");

    if (cfg.estimators.empty()) throw ConfigValidation("estimators list is empty");
    const auto& known = known_estimators();
    for (const auto& name : cfg.estimators) {
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            std::ostringstream msg;
            msg << "unknown estimator '" << name << "' (valid:";
            for (const auto& k : known) msg << " " << k;
            msg << ")";
            throw ConfigValidation(msg.str());
        }
    }

    switch (cfg.scenario) {
        case ScenarioKind::Benchmark1d:
            if (!cfg.q1d) throw ConfigValidation("missing required field: benchmark1d.Q");
            if (!cfg.r1d) throw ConfigValidation("missing required field: benchmark1d.R");
            if (*cfg.q1d <= 0.0) throw ConfigValidation("benchmark1d.Q must be positive");
            if (*cfg.r1d <= 0.0) throw ConfigValidation("benchmark1d.R must be positive");
            break;
        case ScenarioKind::CoordinatedTurn:
            if (cfg.period <= 0.0) throw ConfigValidation("coordinated_turn.T must be positive");
            if (cfg.q_a <= 0.0) throw ConfigValidation("coordinated_turn.Q_a must be positive");
            if (cfg.q_alpha <= 0.0) throw ConfigValidation("coordinated_turn.Q_alpha must be positive");
            if (cfg.r_sigma <= 0.0) throw ConfigValidation("coordinated_turn.R_sigma must be positive");
            if (cfg.anchors.empty()) throw ConfigValidation("coordinated_turn.anchors must not be empty");
            if (cfg.mismatch) {
                if (cfg.segment_steps < 1) throw ConfigValidation("coordinated_turn.segment_steps must be >= 1");
                if (cfg.speed_min <= 0.0 || cfg.speed_max < cfg.speed_min) {
                    throw ConfigValidation("coordinated_turn speed range is invalid");
                }
                if (cfg.turn_rate_max < 0.0) throw ConfigValidation("coordinated_turn.turn_rate_max must be >= 0");
            }
            break;
        case ScenarioKind::Linear:
            break;
        case ScenarioKind::CustomLinear:
            if (!cfg.custom_linear) throw ConfigValidation("custom-linear scenario requires a linear: section");
            break;
    }

    if (cfg.prior_cov_diag) {
        for (int i = 0; i < cfg.prior_cov_diag->size(); ++i) {
            if ((*cfg.prior_cov_diag)[i] <= 0.0) {
                throw ConfigValidation("prior.cov_diag entries must be positive");
            }
        }
    }

    // ief only applies to (custom-)linear scenarios
    const bool linear_scenario =
        cfg.scenario == ScenarioKind::Linear || cfg.scenario == ScenarioKind::CustomLinear;
    if (!linear_scenario &&
        std::find(cfg.estimators.begin(), cfg.estimators.end(), "ief") != cfg.estimators.end()) {
        throw ConfigValidation("estimator 'ief' requires a linear scenario");
    }
}

namespace {

LinearModel default_linear_model() {
    LinearModel lm;
    lm.A = Matrix(2, 2);
    lm.A << 1.0, 0.1, 0.0, 0.95;
    lm.H = Matrix(1, 2);
    lm.H << 1.0, 0.0;
    lm.Q = 0.01 * Matrix::Identity(2, 2);
    lm.R = Matrix::Constant(1, 1, 0.1);
    return lm;
}

} // namespace

ExperimentPlan build_plan(const ExperimentConfig& cfg) {
    validate_config(cfg);

    ExperimentPlan plan;
    plan.output_dir = cfg.output;
    plan.threads = cfg.threads;

    switch (cfg.scenario) {
        case ScenarioKind::Benchmark1d: {
            plan.scenario.model = benchmark_1d(*cfg.q1d, *cfg.r1d);
            plan.metric_components = {0};
            break;
        }
        case ScenarioKind::CoordinatedTurn: {
            SystemModel m;
            m.transition = coordinated_turn(cfg.period, cfg.q_a, cfg.q_alpha);
            m.measurement = range_measurements(cfg.anchors, cfg.r_sigma);
            m.dim = Dim{5, m.measurement.n_z};
            m.prior_mean = Vector(5);
            m.prior_mean << 0.0, 0.0, 1.0, 0.0, 0.1;
            Vector d(5);
            d << 0.05 * 0.05, 0.05 * 0.05, 0.01 * 0.01, 0.01 * 0.01, 0.01 * 0.01;
            m.prior_cov = d.asDiagonal();
            plan.scenario.model = m;
            plan.metric_components = {0, 1};
            break;
        }
        case ScenarioKind::Linear:
        case ScenarioKind::CustomLinear: {
            const LinearModel lm = cfg.scenario == ScenarioKind::Linear ? default_linear_model()
                                                                        : *cfg.custom_linear;
            const int n_x = static_cast<int>(lm.A.rows());
            plan.scenario.model = from_linear(lm, Vector::Zero(n_x), Matrix::Identity(n_x, n_x));
            plan.metric_components.resize(n_x);
            for (int i = 0; i < n_x; ++i) plan.metric_components[i] = i;
            break;
        }
    }

    if (cfg.prior_mean) {
        if (cfg.prior_mean->size() != plan.scenario.model.dim.n_x &&
            cfg.prior_mean->size() != plan.scenario.model.prior_mean.size()) {
            throw ConfigValidation("prior.mean length does not match the state dimension");
        }
        plan.scenario.model.prior_mean = *cfg.prior_mean;
    }
    if (cfg.prior_cov_diag) {
        if (cfg.prior_cov_diag->size() != plan.scenario.model.prior_mean.size()) {
            throw ConfigValidation("prior.cov_diag length does not match the state dimension");
        }
        plan.scenario.model.prior_cov = cfg.prior_cov_diag->asDiagonal();
    }

    plan.scenario.steps = cfg.steps;
    plan.scenario.trials = cfg.trials;
    plan.scenario.seed = cfg.seed;

    if (cfg.scenario == ScenarioKind::CoordinatedTurn && cfg.mismatch) {
        plan.scenario.truth_generator =
            make_piecewise_turn_truth(plan.scenario.model.prior_mean, cfg.period,
                                      cfg.segment_steps, cfg.speed_min, cfg.speed_max,
                                      cfg.turn_rate_max);
    }

    const int n_x = plan.scenario.model.dim.n_x;
    SgviConfig base;
    base.step_size = cfg.step_size;
    base.epsilon = cfg.epsilon;
    base.max_iters = cfg.max_iters;
    base.ut.alpha = cfg.alpha;
    base.ut.beta_s = cfg.beta_s;
    base.ut.kappa = cfg.kappa ? *cfg.kappa : 3.0 - static_cast<double>(n_x);

    for (const auto& name : cfg.estimators) {
        EstimatorSpec spec;
        spec.name = name;
        spec.cfg = base;
        if (name == "sgvi") {
            spec.kind = EstimatorKind::Sgvi;
        } else if (name == "sgvi-jacobian") {
            spec.kind = EstimatorKind::Sgvi;
            spec.cfg.linearization = Linearization::Jacobian;
        } else if (name == "map") {
            spec.kind = EstimatorKind::Map;
        } else {
            spec.kind = EstimatorKind::InformationFilter;
        }
        plan.specs.push_back(std::move(spec));
    }
    return plan;
}

std::string describe_plan(const ExperimentConfig& cfg, const ExperimentPlan& plan) {
    static const char* names[] = {"benchmark1d", "coordinated-turn", "linear", "custom-linear"};
    std::ostringstream out;
    out << "scenario:   " << names[static_cast<int>(cfg.scenario)] << "\n"
        << "state dim:  " << plan.scenario.model.dim.n_x << "\n"
        << "meas dim:   " << plan.scenario.model.measurement.n_z << "\n"
        << "trials:     " << cfg.trials << "\n"
        << "steps:      " << cfg.steps << "\n"
        << "seed:       " << cfg.seed << "\n"
        << "threads:    " << plan.threads << "\n"
        << "output:     " << plan.output_dir << "\n"
        << "solver:     step_size=" << cfg.step_size << " epsilon=" << cfg.epsilon
        << " max_iters=" << cfg.max_iters << " alpha=" << cfg.alpha << " beta_s=" << cfg.beta_s
        << " kappa=" << plan.specs.front().cfg.ut.kappa << "\n"
        << "estimators:";
    for (const auto& s : plan.specs) out << " " << s.name;
    out << "\n";
    return out.str();
}

} // namespace sgvi::cli
