#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "config.hpp"
#include "report.hpp"

namespace fs = std::filesystem;
using namespace sgvi;
using namespace sgvi::cli;

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<int> threads;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("config", flags.config_path, "experiment config file")->required();
    cmd->add_option("--threads", flags.threads, "worker thread count (overrides config)");
    cmd->add_option("--seed", flags.seed, "base RNG seed (overrides config)");
    cmd->add_option("--out", flags.out_dir, "output directory (overrides config)");
}

ExperimentConfig load_with_overrides(const CommonFlags& flags) {
    ExperimentConfig cfg = [&] {
        try {
            return load_config(flags.config_path);
        } catch (const IoError& e) {
            // an unreadable config is a config error (exit 2), unlike
            // output-side I/O failures
            throw ConfigParse(e.what());
        }
    }();
    if (flags.threads) cfg.threads = *flags.threads;
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.out_dir) cfg.output = *flags.out_dir;
    return cfg;
}

int cmd_run(const CommonFlags& flags) {
    const ExperimentConfig cfg = load_with_overrides(flags);
    const ExperimentPlan plan = build_plan(cfg);

    const auto start = std::chrono::steady_clock::now();
    const MonteCarloResult mc = run_monte_carlo(plan.scenario, plan.specs, plan.threads);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const auto rows = summarize(plan, mc);

    std::error_code ec;
    fs::create_directories(plan.output_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + plan.output_dir);
    write_steps_csv((fs::path(plan.output_dir) / "steps.csv").string(), plan, mc);
    write_summary_csv((fs::path(plan.output_dir) / "summary.csv").string(), rows);
    write_timings_csv((fs::path(plan.output_dir) / "timings.csv").string(), plan, mc);

    std::cout << format_summary_table(rows, wall);

    // When both the variational solver and the exact filter ran on a linear
    // model, report how far apart they ended up.
    if (plan.scenario.model.linear) {
        int i_sgvi = -1, i_ief = -1;
        for (size_t e = 0; e < plan.specs.size(); ++e) {
            if (plan.specs[e].name == "sgvi") i_sgvi = static_cast<int>(e);
            if (plan.specs[e].name == "ief") i_ief = static_cast<int>(e);
        }
        if (i_sgvi >= 0 && i_ief >= 0) {
            double max_dev = 0.0;
            for (size_t i = 0; i < mc.trials.size(); ++i) {
                const auto& a = mc.runs[i_sgvi][i];
                const auto& b = mc.runs[i_ief][i];
                if (!a.ok || !b.ok) continue;
                for (size_t t = 0; t < a.trace.steps.size(); ++t) {
                    const double d = (a.trace.steps[t].belief.mean() -
                                      b.trace.steps[t].belief.mean())
                                         .cwiseAbs()
                                         .maxCoeff();
                    max_dev = std::max(max_dev, d);
                }
            }
            std::cout << "max sgvi-ief mean deviation: " << format_g17(max_dev) << "\n";
        }
    }
    std::cout << "results written to " << plan.output_dir << "\n";
    return 0;
}

int cmd_compare_linearization(const CommonFlags& flags) {
    ExperimentConfig cfg = load_with_overrides(flags);
    cfg.estimators = {"sgvi", "sgvi-jacobian", "map"};
    const ExperimentPlan plan = build_plan(cfg);

    const auto start = std::chrono::steady_clock::now();
    const MonteCarloResult mc = run_monte_carlo(plan.scenario, plan.specs, plan.threads);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const auto rows = summarize(plan, mc);

    std::error_code ec;
    fs::create_directories(plan.output_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + plan.output_dir);
    write_summary_csv((fs::path(plan.output_dir) / "summary.csv").string(), rows);

    static const char* labels[] = {"S-GVI (SLR)", "S-GVI (Jacobian)", "MAP"};
    std::cout << "RMSE by linearization (" << mc.trials.size() << " trials)\n";
    for (size_t e = 0; e < rows.size(); ++e) {
        std::cout << "  " << labels[e] << ": " << format_g17(rows[e].rmse) << "\n";
    }
    std::cout << "wall-clock: " << wall << " s\n";
    return 0;
}

int cmd_validate(const CommonFlags& flags) {
    const ExperimentConfig cfg = load_with_overrides(flags);
    const ExperimentPlan plan = build_plan(cfg);
    std::cout << "config ok\n" << describe_plan(cfg, plan);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sequential Gaussian variational inference experiment runner"};
    app.require_subcommand(1);

    CommonFlags run_flags, cmp_flags, val_flags;
    auto* run = app.add_subcommand("run", "run the experiment and write CSV results");
    add_common(run, run_flags);
    auto* cmp = app.add_subcommand("compare-linearization",
                                   "RMSE of SLR vs Jacobian S-GVI and MAP on identical trials");
    add_common(cmp, cmp_flags);
    auto* val = app.add_subcommand("validate", "parse and validate a config without running");
    add_common(val, val_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_flags);
        if (cmp->parsed()) return cmd_compare_linearization(cmp_flags);
        return cmd_validate(val_flags);
    } catch (const ConfigParse& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigValidation& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
