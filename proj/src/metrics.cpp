#include "anyplan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "anyplan/errors.hpp"

namespace anyplan {

double execution_time(const PathSolution& p, double speed) {
    require(speed > 0.0, "execution_time: speed must be > 0");
    return p.length / speed;
}

double planning_time(double budget, double first_solution_time) {
    return std::max(budget, first_solution_time);
}

double cycle_time(double planning, double exec) {
    require(planning >= 0.0 && exec >= 0.0, "cycle_time: inputs must be nonnegative");
    return planning + exec;
}

MetricsTrace backfill(MetricsTrace trace) {
    auto first_finite = std::find_if(trace.samples.begin(), trace.samples.end(),
                                     [](const TraceSample& s) {
                                         return std::isfinite(s.best_length);
                                     });
    if (first_finite == trace.samples.end()) return trace;
    for (auto it = trace.samples.begin(); it != first_finite; ++it) {
        it->best_length = first_finite->best_length;
    }
    return trace;
}

std::pair<double, double> mean_ci95(std::span<const double> values) {
    require(!values.empty(), "mean_ci95: empty sample");
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double stderr_ = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    return {mean, 1.96 * stderr_};
}

std::vector<SummaryRow> summarize(std::span<const RunRecord> records, double speed) {
    require(!records.empty(), "summarize: no records");
    require(speed > 0.0, "summarize: speed must be > 0");

    struct Group {
        int n_total = 0;
        std::vector<double> lengths, execs, cycles, opts;
    };
    std::map<std::tuple<std::string, std::string, std::string>, Group> groups;

    for (const RunRecord& r : records) {
        Group& g = groups[{r.scenario, r.planner, r.budget}];
        g.n_total += 1;
        const MetricsTrace trace = backfill(r.trace);
        std::optional<double> final_length = r.final_length;
        if (!final_length && !trace.samples.empty() &&
            std::isfinite(trace.samples.back().best_length)) {
            final_length = trace.samples.back().best_length;
        }
        if (!final_length) continue;  // failed query: counted, not averaged
        const double exec = *final_length / speed;
        const double planning =
            planning_time(r.budget_value, r.first_solution_time.value_or(r.budget_value));
        g.lengths.push_back(*final_length);
        g.execs.push_back(exec);
        g.cycles.push_back(cycle_time(planning, exec));
        g.opts.push_back(static_cast<double>(r.local_opt_count));
    }

    std::vector<SummaryRow> rows;
    rows.reserve(groups.size());
    for (const auto& [key, g] : groups) {
        SummaryRow row;
        std::tie(row.scenario, row.planner, row.budget) = key;
        row.n_total = g.n_total;
        row.n_success = static_cast<int>(g.lengths.size());
        if (row.n_success > 0) {
            std::tie(row.mean_length, row.ci95_length) = [&] {
                auto [m, c] = mean_ci95(g.lengths);
                return std::pair<std::optional<double>, std::optional<double>>{m, c};
            }();
            auto [me, ce] = mean_ci95(g.execs);
            row.mean_exec = me;
            row.ci95_exec = ce;
            auto [mc, cc] = mean_ci95(g.cycles);
            row.mean_cycle = mc;
            row.ci95_cycle = cc;
            row.mean_local_opts = mean_ci95(g.opts).first;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace anyplan
