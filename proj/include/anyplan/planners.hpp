#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anyplan/graph.hpp"
#include "anyplan/metrics.hpp"
#include "anyplan/random.hpp"
#include "anyplan/scenario.hpp"
#include "anyplan/shortcut.hpp"

namespace anyplan {

enum class PlannerKind {
    RrtConnect,       // bidirectional feasible planner, first solution only
    RrtConnectS,      // one RRTConnect run followed by shortcutting
    MRrtConnectS,     // restart RRTConnect + shortcut, keep the best path
    RrtConnectStar,   // asymptotically optimal bidirectional planner
    RrtConnectStarS,  // RRTConnectStar with threshold-gated shortcutting
};

PlannerKind planner_from_name(const std::string& name);
std::string planner_name(PlannerKind kind);
const std::vector<std::string>& planner_names();

struct Heuristics {
    bool informed_sampling = true;
    bool sample_rejection = true;
};

struct PlannerConfig {
    double range = 1.0;                  // steering step, config-space units
    std::optional<double> gamma_override;
    double opt_threshold = 0.01;         // in [0,1)
    double scf = 3.0;                    // shortcut count factor
    Heuristics heuristics;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Named parameter presets for the two benchmark tasks.
PlannerConfig make_preset(const std::string& task, PlannerKind kind);

struct Termination {
    enum class Kind { TimeBudget, IterationBudget, FirstSolutionThenBudget };
    Kind kind = Kind::FirstSolutionThenBudget;
    double seconds = 0.0;
    std::uint64_t iterations = 0;

    static Termination time_budget(double s);
    static Termination iteration_budget(std::uint64_t n);
    static Termination first_solution_then_budget(double s);
    /// "3" -> first_solution_then_budget(3 s); "5000it" -> iteration_budget.
    static Termination parse(const std::string& text);

    bool deterministic() const { return kind == Kind::IterationBudget; }
    std::string label() const;
    double numeric_budget() const;
};

struct PlanResult {
    std::optional<PathSolution> path;
    MetricsTrace trace;
    int local_opt_count = 0;
    std::optional<double> first_solution_time;  // budget units (s or iterations)
    std::optional<double> first_solution_wall;  // always wall-clock seconds
    std::uint64_t iterations = 0;
    double planning_wall_seconds = 0.0;
};

/// Lock-free progress published by a running planner; any other thread may
/// poll it without blocking the planner.
struct ProgressBoard {
    std::atomic<double> best_length{kInf};
    std::atomic<std::uint64_t> vertices{0};
    std::atomic<std::int32_t> local_opts{0};

    void reset() {
        best_length.store(kInf, std::memory_order_relaxed);
        vertices.store(0, std::memory_order_relaxed);
        local_opts.store(0, std::memory_order_relaxed);
    }
};

struct RunOptions {
    ProgressBoard* board = nullptr;
    /// Iteration-budget runs append a deterministic trace sample every this
    /// many iterations (and on every improvement); 0 picks ~256 samples.
    std::uint64_t trace_every = 0;
};

/// Core of RRTConnectStar, exposed so single iterations and the
/// local-optimization trigger can be driven and observed directly.
class RrtConnectStarPlanner {
public:
    struct IterationEvent {
        bool sample_rejected = false;
        std::optional<Config> accepted_sample;
        double c_best_before = kInf;
        std::vector<VertexId> inserted_start;
        std::vector<VertexId> inserted_goal;
        bool connected = false;
    };

    RrtConnectStarPlanner(const Scenario& scenario, const PlannerConfig& cfg);

    /// One sample-extend-connect-rewire cycle of the bidirectional planner.
    IterationEvent iterate();

    /// Shortcut the best path and reinsert it when the best cost improved by
    /// more than opt_threshold (relative) since the last optimization; the
    /// first solution always triggers. Returns true when the optimizer ran.
    bool maybe_local_optimize();

    bool has_solution() const { return std::isfinite(best_cost()); }
    double best_cost() const { return start_tree_.best_goal_cost(); }
    std::optional<PathSolution> best_path() const { return start_tree_.best_path(); }
    const PlanGraph& start_tree() const { return start_tree_; }
    const PlanGraph& goal_tree() const { return goal_tree_; }
    PlanGraph& mutable_start_tree() { return start_tree_; }
    int local_opt_count() const { return local_opt_count_; }
    const NeighborhoodPolicy& policy() const { return policy_; }
    double admissible_heuristic(const Config& x) const;

private:
    bool gate_rejects(const Config& x) const;
    Config draw_sample();
    void record_connection(VertexId meet_active, VertexId meet_other, bool active_is_start);

    const Scenario& scenario_;
    PlannerConfig cfg_;
    PlanGraph start_tree_;
    PlanGraph goal_tree_;
    NeighborhoodPolicy policy_;
    std::vector<InformedSampler> samplers_;
    MotionPredicate motion_;
    RandomStream rng_;
    RandomStream shortcut_rng_;
    bool active_is_start_ = true;
    int local_opt_count_ = 0;
    double c_last_opt_ = kInf;
};

PlanResult rrt_connect(const Scenario& s, const PlannerConfig& cfg, const Termination& term,
                       const RunOptions& opts = {});
PlanResult rrt_connect_s(const Scenario& s, const PlannerConfig& cfg, const Termination& term,
                         const RunOptions& opts = {});
PlanResult m_rrt_connect_s(const Scenario& s, const PlannerConfig& cfg, const Termination& term,
                           const RunOptions& opts = {});
PlanResult rrt_connect_star(const Scenario& s, const PlannerConfig& cfg, const Termination& term,
                            const RunOptions& opts = {});
PlanResult rrt_connect_star_s(const Scenario& s, const PlannerConfig& cfg,
                              const Termination& term, const RunOptions& opts = {});

PlanResult run_planner(PlannerKind kind, const Scenario& s, const PlannerConfig& cfg,
                       const Termination& term, const RunOptions& opts = {});

}  // namespace anyplan
