#include "anyplan/csv.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "anyplan/errors.hpp"
#include "anyplan/planners.hpp"

namespace anyplan {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_g9(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                end_field();
                field_started = true;  // next field exists even if empty
                break;
            case '\r':
                break;
            case '\n':
                end_row();
                break;
            default:
                field += c;
                field_started = true;
                break;
        }
    }
    if (in_quotes) throw ScenarioError("csv: unterminated quoted field");
    if (field_started || !field.empty() || !row.empty()) end_row();
    return rows;
}

namespace {

const char* kTraceHeader =
    "scenario,planner,seed,budget,t,best_length,local_opt_count,first_solution_time";

}  // namespace

void write_trace_csv(std::ostream& out, std::span<const RunRecord> records) {
    out << kTraceHeader << "\n";
    for (const RunRecord& r : records) {
        const std::string prefix = csv_escape(r.scenario) + "," + csv_escape(r.planner) +
                                   "," + std::to_string(r.seed) + "," +
                                   csv_escape(r.budget) + ",";
        const std::string first = r.first_solution_time
                                      ? format_g9(*r.first_solution_time)
                                      : std::string();
        for (const TraceSample& sample : r.trace.samples) {
            out << prefix << format_g9(sample.t) << "," << format_g9(sample.best_length)
                << "," << sample.local_opt_count << "," << first << "\n";
        }
    }
}

std::vector<RunRecord> read_trace_csv(const std::string& text) {
    const auto rows = parse_csv(text);
    if (rows.empty() || rows.front().size() != 8) {
        throw ScenarioError("trace csv: missing or malformed header");
    }
    std::vector<RunRecord> records;
    std::map<std::tuple<std::string, std::string, std::string, std::string>, std::size_t>
        index;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != 8) {
            throw ScenarioError("trace csv: row " + std::to_string(i) + " has " +
                                std::to_string(row.size()) + " fields, expected 8");
        }
        const auto key = std::make_tuple(row[0], row[1], row[2], row[3]);
        auto it = index.find(key);
        if (it == index.end()) {
            RunRecord r;
            r.scenario = row[0];
            r.planner = row[1];
            r.seed = std::stoull(row[2]);
            r.budget = row[3];
            r.budget_value = Termination::parse(row[3]).numeric_budget();
            if (!row[7].empty()) r.first_solution_time = std::stod(row[7]);
            it = index.emplace(key, records.size()).first;
            records.push_back(std::move(r));
        }
        RunRecord& rec = records[it->second];
        TraceSample sample;
        sample.t = std::stod(row[4]);
        sample.best_length = std::stod(row[5]);
        sample.local_opt_count = std::stoi(row[6]);
        rec.trace.samples.push_back(sample);
        rec.local_opt_count = sample.local_opt_count;
        if (std::isfinite(sample.best_length)) rec.final_length = sample.best_length;
    }
    for (RunRecord& r : records) r.trace.first_solution_time = r.first_solution_time;
    return records;
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
    out << "scenario,planner,budget,n_success,n_total,mean_length,ci95_length,"
           "mean_exec,ci95_exec,mean_cycle,ci95_cycle,mean_local_opts\n";
    auto opt = [](const std::optional<double>& v) {
        return v ? format_g9(*v) : std::string();
    };
    for (const SummaryRow& r : rows) {
        out << csv_escape(r.scenario) << "," << csv_escape(r.planner) << ","
            << csv_escape(r.budget) << "," << r.n_success << "," << r.n_total << ","
            << opt(r.mean_length) << "," << opt(r.ci95_length) << "," << opt(r.mean_exec)
            << "," << opt(r.ci95_exec) << "," << opt(r.mean_cycle) << ","
            << opt(r.ci95_cycle) << "," << opt(r.mean_local_opts) << "\n";
    }
}

}  // namespace anyplan
