#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "anyplan/metrics.hpp"

namespace anyplan {

/// RFC-4180 quoting; floats are written with 9 significant digits.
std::string csv_escape(const std::string& field);
std::string format_g9(double value);

/// RFC-4180 parser (quoted fields, doubled quotes, CRLF tolerant).
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

/// Trace rows: scenario,planner,seed,budget,t,best_length,local_opt_count,
/// first_solution_time (one row per trace sample).
void write_trace_csv(std::ostream& out, std::span<const RunRecord> records);
std::vector<RunRecord> read_trace_csv(const std::string& text);

/// Summary rows: scenario,planner,budget,n_success,n_total,mean_length,
/// ci95_length,mean_exec,ci95_exec,mean_cycle,ci95_cycle,mean_local_opts.
/// Absent statistics (zero-success groups) stay empty.
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

}  // namespace anyplan
