#include "report.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace sgvi::cli {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file: " + path);
    return out;
}

} // namespace

std::vector<SummaryRow> summarize(const ExperimentPlan& plan, const MonteCarloResult& mc) {
    std::vector<SummaryRow> rows;
    for (size_t e = 0; e < plan.specs.size(); ++e) {
        SummaryRow row;
        row.name = plan.specs[e].name;
        std::vector<EstimationTrace> traces;
        std::vector<Trial> trials;
        for (size_t i = 0; i < mc.trials.size(); ++i) {
            if (!mc.runs[e][i].ok) {
                ++row.trials_excluded;
                continue;
            }
            traces.push_back(mc.runs[e][i].trace);
            trials.push_back(mc.trials[i]);
        }
        if (!traces.empty()) {
            row.rmse = rmse(traces, trials, plan.metric_components);
            row.mean_nees = mean_nees(traces, trials, plan.metric_components);
            row.mean_iterations = mean_iterations(traces);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_steps_csv(const std::string& path, const ExperimentPlan& plan,
                     const MonteCarloResult& mc) {
    auto out = open_out(path);
    const int n_x = plan.scenario.model.dim.n_x;

    out << "estimator,trial,step";
    for (int j = 0; j < n_x; ++j) out << ",est_" << j;
    for (int j = 0; j < n_x; ++j) out << ",cov_" << j;
    for (int j = 0; j < n_x; ++j) out << ",truth_" << j;
    for (int j = 0; j < n_x; ++j) out << ",err_" << j;
    out << ",nees,iterations,converged\n";

    for (size_t e = 0; e < plan.specs.size(); ++e) {
        for (size_t i = 0; i < mc.trials.size(); ++i) {
            const auto& run = mc.runs[e][i];
            if (!run.ok) continue;
            const auto& trial = mc.trials[i];
            for (size_t t = 0; t < run.trace.steps.size(); ++t) {
                const auto& step = run.trace.steps[t];
                const Vector& mu = step.belief.mean();
                const Matrix& cov = step.belief.covariance();
                const Vector& truth = trial.truth[t];
                out << plan.specs[e].name << ',' << i << ',' << (t + 1);
                for (int j = 0; j < n_x; ++j) out << ',' << format_g17(mu[j]);
                for (int j = 0; j < n_x; ++j) out << ',' << format_g17(cov(j, j));
                for (int j = 0; j < n_x; ++j) out << ',' << format_g17(truth[j]);
                for (int j = 0; j < n_x; ++j) out << ',' << format_g17(mu[j] - truth[j]);
                out << ',' << format_g17(nees(step.belief, truth, plan.metric_components)) << ','
                    << step.iterations << ',' << (step.converged ? 1 : 0) << '\n';
            }
        }
    }
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
    auto out = open_out(path);
    out << "estimator,rmse,mean_nees,mean_iterations,trials_excluded\n";
    for (const auto& r : rows) {
        out << r.name << ',' << format_g17(r.rmse) << ',' << format_g17(r.mean_nees) << ','
            << format_g17(r.mean_iterations) << ',' << r.trials_excluded << '\n';
    }
}

void write_timings_csv(const std::string& path, const ExperimentPlan& plan,
                       const MonteCarloResult& mc) {
    auto out = open_out(path);
    out << "estimator,trial,step,seconds\n";
    for (size_t e = 0; e < plan.specs.size(); ++e) {
        for (size_t i = 0; i < mc.trials.size(); ++i) {
            const auto& run = mc.runs[e][i];
            if (!run.ok) continue;
            for (size_t t = 0; t < run.trace.steps.size(); ++t) {
                out << plan.specs[e].name << ',' << i << ',' << (t + 1) << ','
                    << format_g17(run.trace.steps[t].elapsed) << '\n';
            }
        }
    }
}

std::string format_summary_table(const std::vector<SummaryRow>& rows, double wall_seconds) {
    std::ostringstream out;
    out << std::left << std::setw(16) << "estimator" << std::right << std::setw(12) << "rmse"
        << std::setw(12) << "mean_nees" << std::setw(12) << "mean_iters" << std::setw(10)
        << "excluded" << "\n";
    out << std::string(62, '-') << "\n";
    out << std::fixed << std::setprecision(4);
    for (const auto& r : rows) {
        out << std::left << std::setw(16) << r.name << std::right << std::setw(12) << r.rmse
            << std::setw(12) << r.mean_nees << std::setw(12) << r.mean_iterations << std::setw(10)
            << r.trials_excluded << "\n";
    }
    out << "wall-clock: " << std::setprecision(3) << wall_seconds << " s\n";
    return out.str();
}

} // namespace sgvi::cli
