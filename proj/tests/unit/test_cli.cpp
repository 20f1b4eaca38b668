#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "config.hpp"

using namespace sgvi;
using namespace sgvi::cli;
namespace fs = std::filesystem;

namespace {

struct TempConfig {
    fs::path path;

    explicit TempConfig(const std::string& body) {
        static int counter = 0;
        path = fs::temp_directory_path() / ("sgvi_cli_test_" + std::to_string(counter++) + ".yaml");
        std::ofstream out(path);
        out << body;
    }
    ~TempConfig() { std::error_code ec; fs::remove(path, ec); }
};

} // namespace

TEST_CASE("minimal benchmark config parses with defaults") {
    TempConfig cfg("scenario: benchmark1d\nbenchmark1d: {Q: 10, R: 1}\n");
    const ExperimentConfig c = load_config(cfg.path.string());
    CHECK(c.scenario == ScenarioKind::Benchmark1d);
    CHECK(c.trials == 100);
    CHECK(c.steps == 50);
    CHECK(c.step_size == doctest::Approx(1.0));
    CHECK(c.epsilon == doctest::Approx(0.02));
    CHECK(c.max_iters == 50);
    CHECK(c.alpha == doctest::Approx(1.0));
    CHECK(c.beta_s == doctest::Approx(0.1));
    CHECK_FALSE(c.kappa.has_value());
    REQUIRE(c.q1d.has_value());
    CHECK(*c.q1d == doctest::Approx(10.0));

    const ExperimentPlan plan = build_plan(c);
    CHECK(plan.scenario.model.dim.n_x == 1);
    CHECK(plan.metric_components == std::vector<int>{0});
    // kappa resolves to 3 - n_x
    CHECK(plan.specs.front().cfg.ut.kappa == doctest::Approx(2.0));
}

TEST_CASE("linear scenario needs no scenario-specific fields") {
    TempConfig cfg("scenario: linear\nestimators: [sgvi, ief]\n");
    const ExperimentPlan plan = build_plan(load_config(cfg.path.string()));
    CHECK(plan.scenario.model.linear.has_value());
    CHECK(plan.specs[1].kind == EstimatorKind::InformationFilter);
    CHECK(plan.metric_components.size() == static_cast<size_t>(plan.scenario.model.dim.n_x));
}

TEST_CASE("coordinated-turn defaults and mismatch generator") {
    TempConfig cfg(
        "scenario: coordinated-turn\n"
        "coordinated_turn: {mismatch: true}\n");
    const ExperimentConfig c = load_config(cfg.path.string());
    CHECK(c.q_a == doctest::Approx(4.0));
    CHECK(c.q_alpha == doctest::Approx(1e-4));
    CHECK(c.r_sigma == doctest::Approx(0.5));
    CHECK(c.anchors.size() == 3);
    const ExperimentPlan plan = build_plan(c);
    CHECK(plan.scenario.model.dim.n_x == 5);
    CHECK(plan.scenario.model.dim.n_z == 3);
    CHECK(bool(plan.scenario.truth_generator));
    CHECK(plan.metric_components == std::vector<int>{0, 1});
    CHECK(plan.specs.front().cfg.ut.kappa == doctest::Approx(-2.0));
}

TEST_CASE("trials=0 is rejected") {
    TempConfig cfg("scenario: benchmark1d\ntrials: 0\nbenchmark1d: {Q: 1, R: 1}\n");
    CHECK_THROWS_AS(validate_config(load_config(cfg.path.string())), ConfigValidation);
}

TEST_CASE("unknown estimator names the valid set") {
    TempConfig cfg(
        "scenario: benchmark1d\nestimators: [sgvi, kalman]\nbenchmark1d: {Q: 1, R: 1}\n");
    try {
        validate_config(load_config(cfg.path.string()));
        FAIL("expected ConfigValidation");
    } catch (const ConfigValidation& e) {
        const std::string msg = e.what();
        CHECK(msg.find("kalman") != std::string::npos);
        for (const auto& name : known_estimators()) {
            CHECK(msg.find(name) != std::string::npos);
        }
    }
}

TEST_CASE("missing benchmark noise is reported by field name") {
    TempConfig cfg("scenario: benchmark1d\nbenchmark1d: {R: 1}\n");
    try {
        validate_config(load_config(cfg.path.string()));
        FAIL("expected ConfigValidation");
    } catch (const ConfigValidation& e) {
        CHECK(std::string(e.what()).find("benchmark1d.Q") != std::string::npos);
    }
}

TEST_CASE("information filter requires a linear scenario") {
    TempConfig cfg("scenario: benchmark1d\nestimators: [ief]\nbenchmark1d: {Q: 1, R: 1}\n");
    CHECK_THROWS_AS(validate_config(load_config(cfg.path.string())), ConfigValidation);
}

TEST_CASE("nonpositive variances are rejected") {
    TempConfig cfg("scenario: benchmark1d\nbenchmark1d: {Q: -1, R: 1}\n");
    CHECK_THROWS_AS(validate_config(load_config(cfg.path.string())), ConfigValidation);
}

TEST_CASE("unreadable config raises IoError") {
    CHECK_THROWS_AS(load_config("/nonexistent/sgvi.yaml"), IoError);
}

TEST_CASE("malformed yaml raises ConfigParse") {
    TempConfig cfg("scenario: [unterminated\n");
    CHECK_THROWS_AS(load_config(cfg.path.string()), Error);
}

TEST_CASE("prior override is applied and validated") {
    TempConfig cfg(
        "scenario: benchmark1d\nbenchmark1d: {Q: 1, R: 1}\n"
        "prior: {mean: [2.0], cov_diag: [9.0]}\n");
    const ExperimentPlan plan = build_plan(load_config(cfg.path.string()));
    CHECK(plan.scenario.model.prior_mean[0] == doctest::Approx(2.0));
    CHECK(plan.scenario.model.prior_cov(0, 0) == doctest::Approx(9.0));

    TempConfig bad(
        "scenario: benchmark1d\nbenchmark1d: {Q: 1, R: 1}\n"
        "prior: {cov_diag: [-1.0]}\n");
    CHECK_THROWS_AS(build_plan(load_config(bad.path.string())), ConfigValidation);
}

TEST_CASE("custom linear model round-trips through the plan") {
    TempConfig cfg(
        "scenario: custom-linear\nestimators: [sgvi, ief]\n"
        "linear:\n"
        "  A: [[0.9, 0.1], [0.0, 0.8]]\n"
        "  H: [[1.0, 0.0]]\n"
        "  Q: [[0.1, 0.0], [0.0, 0.1]]\n"
        "  R: [[0.5]]\n");
    const ExperimentPlan plan = build_plan(load_config(cfg.path.string()));
    REQUIRE(plan.scenario.model.linear.has_value());
    CHECK(plan.scenario.model.linear->A(0, 1) == doctest::Approx(0.1));
    CHECK(plan.scenario.model.dim.n_z == 1);
}
