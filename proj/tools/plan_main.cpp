#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "anyplan/bench.hpp"
#include "anyplan/csv.hpp"
#include "anyplan/errors.hpp"
#include "anyplan/planners.hpp"
#include "anyplan/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitScenario = 2;
constexpr int kExitRuntime = 3;

std::vector<anyplan::Scenario> load_suite(const std::string& dir,
                                          const std::vector<std::string>& filter) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw anyplan::ScenarioError(dir + ": no .json scenarios found");

    std::vector<anyplan::Scenario> suite;
    for (const auto& file : files) {
        anyplan::Scenario s = anyplan::load_scenario_file(file);
        if (!filter.empty() &&
            std::find(filter.begin(), filter.end(), s.name) == filter.end()) {
            continue;
        }
        suite.push_back(std::move(s));
    }
    if (suite.empty()) throw anyplan::ScenarioError(dir + ": no scenarios match the filter");
    return suite;
}

void write_file_or_stdout(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << content;
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace anyplan;

    CLI::App app{"Anytime motion-planning benchmark"};
    app.require_subcommand(1);

    // --- run ---
    auto* run = app.add_subcommand("run", "Run planners over a scenario suite");
    std::string suite_dir;
    std::vector<std::string> scenario_filter;
    std::vector<std::string> planner_args;
    std::string preset = "custom";
    std::vector<std::string> budget_args;
    int seeds = 1;
    std::uint64_t seed_base = 0;
    std::string out_path = "-";
    int jobs = 1;
    std::uint64_t trace_every = 0;
    bool verbose = false;
    double range = 1.0, scf = 3.0, opt_threshold = 0.01, gamma = 0.0;
    bool informed = true, reject = true;

    run->add_option("--suite", suite_dir, "Directory of scenario .json files")->required();
    run->add_option("--scenario", scenario_filter, "Only run the named scenarios");
    run->add_option("--planner", planner_args,
                    "Planner names (default: all): rrtconnect, rrtconnect_s, "
                    "mrrtconnect_s, rrtconnect_star, rrtconnect_star_s");
    run->add_option("--preset", preset, "Parameter preset: vine, cubicle or custom")
        ->check(CLI::IsMember({"vine", "cubicle", "custom"}));
    run->add_option("--budget", budget_args,
                    "Budgets: seconds ('3'), strict seconds ('3s') or iterations "
                    "('5000it'); default 0.3 1 3 10 30");
    run->add_option("--seeds", seeds, "Number of seeds per combination")
        ->check(CLI::PositiveNumber);
    run->add_option("--seed-base", seed_base, "First seed value");
    run->add_option("--out", out_path, "Trace CSV destination ('-' for stdout)");
    run->add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);
    run->add_option("--trace-every", trace_every,
                    "Iteration-budget trace sampling period (0 = auto)");
    run->add_flag("--verbose", verbose, "Progress on stderr");
    run->add_option("--range", range, "custom preset: steering step");
    run->add_option("--scf", scf, "custom preset: shortcut count factor");
    run->add_option("--opt-threshold", opt_threshold,
                    "custom preset: local optimization threshold");
    run->add_option("--gamma", gamma, "custom preset: neighborhood gamma override");
    run->add_flag("--informed,!--no-informed", informed,
                  "custom preset: informed sampling");
    run->add_flag("--reject,!--no-reject", reject, "custom preset: sample rejection");

    // --- summarize ---
    auto* summarize_cmd = app.add_subcommand("summarize", "Aggregate a trace CSV");
    std::string in_path;
    std::string summary_out = "-";
    double speed = 1.0;
    summarize_cmd->add_option("--in", in_path, "Trace CSV produced by 'run'")->required();
    summarize_cmd->add_option("--out", summary_out, "Summary CSV destination");
    summarize_cmd->add_option("--speed", speed, "Execution speed, config-units per second")
        ->check(CLI::PositiveNumber);

    // --- validate ---
    auto* validate_cmd = app.add_subcommand("validate", "Validate a scenario file");
    std::string scenario_path;
    validate_cmd->add_option("scenario", scenario_path, "Scenario .json file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*validate_cmd) {
            try {
                const Scenario s = load_scenario_file(scenario_path);
                std::cout << scenario_path << ": ok (" << s.name << ", "
                          << s.dimension() << "D, " << s.world.obstacles.size()
                          << " obstacles, " << s.goals.size() << " goal(s))\n";
                return kExitOk;
            } catch (const ScenarioError& e) {
                std::cerr << "invalid scenario: " << e.what() << "\n";
                return kExitScenario;
            }
        }

        if (*run) {
            std::vector<Scenario> suite;
            try {
                suite = load_suite(suite_dir, scenario_filter);
            } catch (const ScenarioError& e) {
                std::cerr << "scenario error: " << e.what() << "\n";
                return kExitScenario;
            }

            if (planner_args.empty()) planner_args = planner_names();
            std::vector<BenchPlanner> planners;
            for (const std::string& name : planner_args) {
                BenchPlanner p;
                p.name = name;
                p.kind = planner_from_name(name);
                if (preset == "custom") {
                    p.cfg.range = range;
                    p.cfg.scf = scf;
                    p.cfg.opt_threshold = opt_threshold;
                    if (gamma > 0.0) p.cfg.gamma_override = gamma;
                    p.cfg.heuristics.informed_sampling = informed;
                    p.cfg.heuristics.sample_rejection = reject;
                } else {
                    p.cfg = make_preset(preset, p.kind);
                }
                p.cfg.validate();
                planners.push_back(std::move(p));
            }

            if (budget_args.empty()) budget_args = {"0.3", "1", "3", "10", "30"};
            std::vector<Termination> budgets;
            for (const std::string& b : budget_args) budgets.push_back(Termination::parse(b));

            BenchOptions options;
            options.jobs = jobs;
            options.trace_every = trace_every;
            options.seed_base = seed_base;
            options.verbose = verbose;
            std::vector<RunRecord> records =
                run_benchmark(suite, planners, budgets, seeds, options);

            std::ostringstream csv;
            write_trace_csv(csv, records);
            write_file_or_stdout(out_path, csv.str());
            return kExitOk;
        }

        if (*summarize_cmd) {
            std::ifstream in(in_path);
            if (!in) {
                std::cerr << in_path << ": cannot open\n";
                return kExitRuntime;
            }
            std::ostringstream buffer;
            buffer << in.rdbuf();
            const std::vector<RunRecord> records = read_trace_csv(buffer.str());
            const std::vector<SummaryRow> rows = summarize(records, speed);
            std::ostringstream csv;
            write_summary_csv(csv, rows);
            write_file_or_stdout(summary_out, csv.str());
            return kExitOk;
        }
    } catch (const ContractViolation& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return kExitScenario;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
