#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anyplan/space.hpp"

namespace anyplan {

/// One anytime measurement. `t` is seconds since planner start under time
/// budgets and the iteration count under iteration budgets (which keeps
/// traces byte-reproducible).
struct TraceSample {
    double t = 0.0;
    double best_length = kInf;
    int local_opt_count = 0;
};

/// Time-stamped anytime record of a single planner run: t strictly
/// increasing, best_length non-increasing once finite.
struct MetricsTrace {
    std::vector<TraceSample> samples;
    std::optional<double> first_solution_time;  // same units as TraceSample::t
};

/// Constant-speed execution model: traversal time of the path at `speed`
/// config-units per second.
double execution_time(const PathSolution& p, double speed);

/// Planning time charged to a successful query: the full budget, or the
/// first-solution time when that came later.
double planning_time(double budget, double first_solution_time);

double cycle_time(double planning, double exec);

/// Samples taken before the first solution get the first solution's length.
MetricsTrace backfill(MetricsTrace trace);

/// One benchmark run (scenario x planner x budget x seed).
struct RunRecord {
    std::string scenario;
    std::string planner;
    std::uint64_t seed = 0;
    std::string budget;          // label, e.g. "3" (seconds) or "5000it"
    double budget_value = 0.0;   // numeric part of the label
    MetricsTrace trace;
    std::optional<double> final_length;
    int local_opt_count = 0;
    std::optional<double> first_solution_time;
};

/// Per-(scenario, planner, budget) statistics over seeds. Mean +- 1.96*stderr;
/// groups with zero successes carry absent statistics rather than zeros.
struct SummaryRow {
    std::string scenario;
    std::string planner;
    std::string budget;
    int n_success = 0;
    int n_total = 0;
    std::optional<double> mean_length;
    std::optional<double> ci95_length;
    std::optional<double> mean_exec;
    std::optional<double> ci95_exec;
    std::optional<double> mean_cycle;
    std::optional<double> ci95_cycle;
    std::optional<double> mean_local_opts;
};

std::vector<SummaryRow> summarize(std::span<const RunRecord> records, double speed);

/// mean and 1.96*stderr (sample stddev, Bessel-corrected); ci = 0 for n < 2.
std::pair<double, double> mean_ci95(std::span<const double> values);

}  // namespace anyplan
