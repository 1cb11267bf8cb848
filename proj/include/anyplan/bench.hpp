#pragma once

#include <span>
#include <vector>

#include "anyplan/metrics.hpp"
#include "anyplan/planners.hpp"
#include "anyplan/scenario.hpp"

namespace anyplan {

struct BenchPlanner {
    std::string name;
    PlannerKind kind;
    PlannerConfig cfg;
};

struct BenchOptions {
    int jobs = 1;            // independent runs on parallel workers
    double poll_hz = 50.0;   // trace sampling rate under time budgets
    std::uint64_t trace_every = 0;  // iteration-mode sampling period (0 = auto)
    std::uint64_t seed_base = 0;    // runs use seeds seed_base .. seed_base+seeds-1
    bool verbose = false;
};

/// Run every (scenario, planner, budget, seed) combination. The result order
/// is the deterministic cross-product order regardless of worker scheduling,
/// and iteration-budget runs reproduce byte-identically. Under time budgets a
/// sampler thread polls each run's progress at >= poll_hz without blocking
/// the planner. Throws if any trace violates anytime monotonicity.
std::vector<RunRecord> run_benchmark(std::span<const Scenario> suite,
                                     std::span<const BenchPlanner> planners,
                                     std::span<const Termination> budgets, int seeds,
                                     const BenchOptions& options = {});

}  // namespace anyplan
