#ifndef SGVI_TOOLS_REPORT_HPP
#define SGVI_TOOLS_REPORT_HPP

#include <string>
#include <vector>

#include "config.hpp"
#include "sgvi/metrics.hpp"

namespace sgvi::cli {

/// Per-estimator aggregate over the successful trials of a run.
struct SummaryRow {
    std::string name;
    double rmse = 0.0;
    double mean_nees = 0.0;
    double mean_iterations = 0.0;
    int trials_excluded = 0;
};

/// One double at 17 significant digits; round-trips through strtod exactly.
std::string format_g17(double v);

std::vector<SummaryRow> summarize(const ExperimentPlan& plan, const MonteCarloResult& mc);

/// steps.csv: estimator,trial,step,est_*,cov_*,truth_*,err_*,nees,iterations,converged.
/// One row per estimator x successful trial x step; deterministic content.
void write_steps_csv(const std::string& path, const ExperimentPlan& plan,
                     const MonteCarloResult& mc);

/// summary.csv: estimator,rmse,mean_nees,mean_iterations,trials_excluded.
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);

/// timings.csv: estimator,trial,step,seconds. Machine-dependent; kept apart
/// from the deterministic outputs on purpose.
void write_timings_csv(const std::string& path, const ExperimentPlan& plan,
                       const MonteCarloResult& mc);

std::string format_summary_table(const std::vector<SummaryRow>& rows, double wall_seconds);

} // namespace sgvi::cli

#endif
