#include "anyplan/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "anyplan/errors.hpp"

namespace anyplan {

namespace {

struct RunSlot {
    const Scenario* scenario;
    const BenchPlanner* planner;
    const Termination* budget;
    std::uint64_t seed;
};

RunRecord execute_run(const RunSlot& slot, const BenchOptions& options) {
    using Clock = std::chrono::steady_clock;

    PlannerConfig cfg = slot.planner->cfg;
    cfg.seed = slot.seed;

    RunRecord record;
    record.scenario = slot.scenario->name;
    record.planner = slot.planner->name;
    record.seed = slot.seed;
    record.budget = slot.budget->label();
    record.budget_value = slot.budget->numeric_budget();

    ProgressBoard board;
    RunOptions run_opts;
    run_opts.board = &board;
    run_opts.trace_every = options.trace_every;

    const bool deterministic = slot.budget->deterministic();
    std::vector<TraceSample> polled;
    std::atomic<bool> done{false};
    std::thread poller;
    const Clock::time_point start = Clock::now();

    if (!deterministic) {
        // §-style measurement thread: poll the lock-free snapshot without
        // perturbing the planner.
        const auto period = std::chrono::duration<double>(1.0 / options.poll_hz);
        poller = std::thread([&] {
            double last_t = -1.0;
            while (!done.load(std::memory_order_relaxed)) {
                const double t = std::chrono::duration<double>(Clock::now() - start).count();
                const double best = board.best_length.load(std::memory_order_relaxed);
                const int opts = board.local_opts.load(std::memory_order_relaxed);
                if (t > last_t) {
                    polled.push_back({t, best, opts});
                    last_t = t;
                }
                std::this_thread::sleep_for(period);
            }
        });
    }

    PlanResult result =
        run_planner(slot.planner->kind, *slot.scenario, cfg, *slot.budget, run_opts);

    if (!deterministic) {
        done.store(true, std::memory_order_relaxed);
        poller.join();
        const double t_end = std::chrono::duration<double>(Clock::now() - start).count();
        const double final_best = result.path ? result.path->length : kInf;
        if (polled.empty() || polled.back().t < t_end) {
            polled.push_back({t_end, final_best, result.local_opt_count});
        }
        result.trace.samples = std::move(polled);
        result.trace.first_solution_time = result.first_solution_time;
    }

    // live anytime assertion: best length never increases once finite
    double prev = kInf;
    for (const TraceSample& s : result.trace.samples) {
        if (std::isfinite(prev) && s.best_length > prev + 1e-9) {
            throw std::runtime_error("trace monotonicity violated for " + record.scenario +
                                     "/" + record.planner);
        }
        prev = std::min(prev, s.best_length);
    }

    record.trace = std::move(result.trace);
    record.final_length =
        result.path ? std::optional<double>(result.path->length) : std::nullopt;
    record.local_opt_count = result.local_opt_count;
    record.first_solution_time = result.first_solution_time;
    return record;
}

}  // namespace

std::vector<RunRecord> run_benchmark(std::span<const Scenario> suite,
                                     std::span<const BenchPlanner> planners,
                                     std::span<const Termination> budgets, int seeds,
                                     const BenchOptions& options) {
    require(!suite.empty(), "run_benchmark: no scenarios");
    require(!planners.empty(), "run_benchmark: no planners");
    require(!budgets.empty(), "run_benchmark: no budgets");
    require(seeds >= 1, "run_benchmark: seeds must be >= 1");

    std::vector<RunSlot> slots;
    for (const Scenario& scenario : suite) {
        for (const BenchPlanner& planner : planners) {
            for (const Termination& budget : budgets) {
                for (int seed = 0; seed < seeds; ++seed) {
                    slots.push_back({&scenario, &planner, &budget,
                                     options.seed_base + static_cast<std::uint64_t>(seed)});
                }
            }
        }
    }

    std::vector<RunRecord> records(slots.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= slots.size() || failed.load()) break;
            try {
                if (options.verbose) {
                    std::cerr << "run " << (i + 1) << "/" << slots.size() << ": "
                              << slots[i].scenario->name << " " << slots[i].planner->name
                              << " budget=" << slots[i].budget->label()
                              << " seed=" << slots[i].seed << "\n";
                }
                records[i] = execute_run(slots[i], options);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed.store(true);
                if (failure.empty()) failure = e.what();
            }
        }
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (failed.load()) throw std::runtime_error("benchmark run failed: " + failure);
    return records;
}

}  // namespace anyplan
