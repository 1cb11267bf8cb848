#include "anyplan/planners.hpp"

#include <algorithm>
#include <cmath>

#include "anyplan/errors.hpp"

namespace anyplan {

PlannerKind planner_from_name(const std::string& name) {
    if (name == "rrtconnect") return PlannerKind::RrtConnect;
    if (name == "rrtconnect_s") return PlannerKind::RrtConnectS;
    if (name == "mrrtconnect_s") return PlannerKind::MRrtConnectS;
    if (name == "rrtconnect_star") return PlannerKind::RrtConnectStar;
    if (name == "rrtconnect_star_s") return PlannerKind::RrtConnectStarS;
    throw ContractViolation("unknown planner '" + name + "'");
}

std::string planner_name(PlannerKind kind) {
    switch (kind) {
        case PlannerKind::RrtConnect: return "rrtconnect";
        case PlannerKind::RrtConnectS: return "rrtconnect_s";
        case PlannerKind::MRrtConnectS: return "mrrtconnect_s";
        case PlannerKind::RrtConnectStar: return "rrtconnect_star";
        case PlannerKind::RrtConnectStarS: return "rrtconnect_star_s";
    }
    throw ContractViolation("unknown planner kind");
}

const std::vector<std::string>& planner_names() {
    static const std::vector<std::string> names = {
        "rrtconnect", "rrtconnect_s", "mrrtconnect_s", "rrtconnect_star",
        "rrtconnect_star_s"};
    return names;
}

void PlannerConfig::validate() const {
    require(range > 0.0, "PlannerConfig: range must be > 0");
    require(scf > 0.0, "PlannerConfig: scf must be > 0");
    require(opt_threshold >= 0.0 && opt_threshold < 1.0,
            "PlannerConfig: opt_threshold must lie in [0,1)");
    if (gamma_override) {
        require(*gamma_override > 0.0, "PlannerConfig: gamma_override must be > 0");
    }
}

PlannerConfig make_preset(const std::string& task, PlannerKind kind) {
    PlannerConfig cfg;
    if (task == "vine") {
        switch (kind) {
            case PlannerKind::RrtConnectStar:
                cfg.range = 2.5;
                break;
            case PlannerKind::RrtConnectStarS:
                cfg.range = 2.5;
                cfg.scf = 3.0;
                cfg.opt_threshold = 0.01;
                break;
            case PlannerKind::RrtConnect:
            case PlannerKind::RrtConnectS:
            case PlannerKind::MRrtConnectS:
                cfg.range = 0.5;
                cfg.scf = 4.0;
                break;
        }
        return cfg;
    }
    if (task == "cubicle") {
        switch (kind) {
            case PlannerKind::RrtConnectStar:
                cfg.range = 0.5;
                break;
            case PlannerKind::RrtConnectStarS:
                cfg.range = 3.0;
                cfg.scf = 3.0;
                cfg.opt_threshold = 0.11;
                break;
            case PlannerKind::RrtConnect:
            case PlannerKind::RrtConnectS:
            case PlannerKind::MRrtConnectS:
                cfg.range = 0.5;
                cfg.scf = 3.0;
                break;
        }
        return cfg;
    }
    throw ContractViolation("unknown preset task '" + task + "'");
}

Termination Termination::time_budget(double s) {
    require(s > 0.0, "Termination: budget must be > 0");
    return {Kind::TimeBudget, s, 0};
}

Termination Termination::iteration_budget(std::uint64_t n) {
    require(n > 0, "Termination: budget must be > 0");
    return {Kind::IterationBudget, 0.0, n};
}

Termination Termination::first_solution_then_budget(double s) {
    require(s > 0.0, "Termination: budget must be > 0");
    return {Kind::FirstSolutionThenBudget, s, 0};
}

Termination Termination::parse(const std::string& text) {
    try {
        if (text.size() > 2 && text.substr(text.size() - 2) == "it") {
            std::size_t used = 0;
            const unsigned long long n = std::stoull(text.substr(0, text.size() - 2), &used);
            require(used == text.size() - 2, "trailing characters");
            return iteration_budget(n);
        }
        if (!text.empty() && text.back() == 's') {
            std::size_t used = 0;
            const double s = std::stod(text.substr(0, text.size() - 1), &used);
            require(used == text.size() - 1, "trailing characters");
            return time_budget(s);
        }
        std::size_t used = 0;
        const double s = std::stod(text, &used);
        require(used == text.size(), "trailing characters");
        return first_solution_then_budget(s);
    } catch (const ContractViolation&) {
        throw;
    } catch (const std::exception&) {
        throw ContractViolation("cannot parse budget '" + text +
                                "' (expected e.g. '3', '3s' or '5000it')");
    }
}

std::string Termination::label() const {
    char buf[64];
    switch (kind) {
        case Kind::IterationBudget:
            std::snprintf(buf, sizeof(buf), "%lluit",
                          static_cast<unsigned long long>(iterations));
            return buf;
        case Kind::TimeBudget:
            std::snprintf(buf, sizeof(buf), "%.9gs", seconds);
            return buf;
        case Kind::FirstSolutionThenBudget:
            std::snprintf(buf, sizeof(buf), "%.9g", seconds);
            return buf;
    }
    return "";
}

double Termination::numeric_budget() const {
    return kind == Kind::IterationBudget ? static_cast<double>(iterations) : seconds;
}

namespace {

/// Shared per-run bookkeeping: the termination clock, the progress board,
/// first-solution capture and deterministic trace recording under iteration
/// budgets.
class RunContext {
    using Clock = std::chrono::steady_clock;

public:
    RunContext(const Termination& term, const RunOptions& opts)
        : term_(term), board_(opts.board), start_(Clock::now()) {
        if (board_) board_->reset();
        if (term_.kind == Termination::Kind::IterationBudget) {
            trace_every_ = opts.trace_every != 0
                               ? opts.trace_every
                               : std::max<std::uint64_t>(1, term_.iterations / 256);
        }
    }

    double elapsed() const {
        return std::chrono::duration<double>(Clock::now() - start_).count();
    }

    std::uint64_t iterations() const { return iterations_; }

    bool expired(bool has_solution) const {
        switch (term_.kind) {
            case Termination::Kind::TimeBudget:
                return elapsed() >= term_.seconds;
            case Termination::Kind::IterationBudget:
                return iterations_ >= term_.iterations;
            case Termination::Kind::FirstSolutionThenBudget:
                return has_solution && elapsed() >= term_.seconds;
        }
        return true;
    }

    void tick(double best, int local_opts, std::uint64_t vertices) {
        ++iterations_;
        observe(best, local_opts, vertices,
                trace_every_ != 0 && iterations_ % trace_every_ == 0);
    }

    void note_best(double best, int local_opts, std::uint64_t vertices) {
        observe(best, local_opts, vertices, false);
    }

    void finalize(PlanResult& r, double best, int local_opts) {
        if (trace_every_ != 0) {
            append(static_cast<double>(iterations_), best, local_opts);
        }
        r.iterations = iterations_;
        r.planning_wall_seconds = elapsed();
        r.first_solution_time = first_solution_;
        r.first_solution_wall = first_solution_wall_;
        r.local_opt_count = local_opts;
        trace_.first_solution_time = first_solution_;
        r.trace = std::move(trace_);
    }

private:
    void observe(double best, int local_opts, std::uint64_t vertices, bool due) {
        if (board_) {
            board_->best_length.store(best, std::memory_order_relaxed);
            board_->vertices.store(vertices, std::memory_order_relaxed);
            board_->local_opts.store(local_opts, std::memory_order_relaxed);
        }
        if (std::isfinite(best) && !first_solution_) {
            first_solution_wall_ = elapsed();
            first_solution_ = term_.kind == Termination::Kind::IterationBudget
                                  ? static_cast<double>(iterations_)
                                  : *first_solution_wall_;
        }
        const bool improved = best < last_best_;
        last_best_ = std::min(last_best_, best);
        if (trace_every_ != 0 && (due || improved)) {
            append(static_cast<double>(iterations_), best, local_opts);
        }
    }

    void append(double t, double best, int opts) {
        if (!trace_.samples.empty() && trace_.samples.back().t >= t) {
            trace_.samples.back() = {t, best, opts};
            return;
        }
        trace_.samples.push_back({t, best, opts});
    }

    Termination term_;
    ProgressBoard* board_ = nullptr;
    Clock::time_point start_;
    std::uint64_t iterations_ = 0;
    std::uint64_t trace_every_ = 0;
    double last_best_ = kInf;
    std::optional<double> first_solution_;
    std::optional<double> first_solution_wall_;
    MetricsTrace trace_;
};

Config steer(const Config& from, const Config& to, double range, double dist) {
    return dist <= range ? to : Config(interpolate(from, to, range / dist));
}

std::vector<Config> compose_bidirectional(const PathSolution& start_branch,
                                          const PathSolution& goal_branch) {
    // start_branch runs start..meet, goal_branch runs goal..meet; the meeting
    // configs coincide up to the duplicate-vertex tolerance.
    std::vector<Config> configs = start_branch.configs;
    for (auto it = goal_branch.configs.rbegin(); it != goal_branch.configs.rend(); ++it) {
        if (it == goal_branch.configs.rbegin() && *it == configs.back()) continue;
        configs.push_back(*it);
    }
    return configs;
}

/// One feasible bidirectional RRTConnect query. Ticks iterations on the
/// shared context and stops at the first solution or when the context
/// (evaluated with the caller's solution state) expires.
std::optional<PathSolution> rrt_connect_query(const Scenario& s, double range,
                                              RandomStream& rng, RunContext& ctx,
                                              double current_best, int local_opts,
                                              bool outer_has_solution) {
    PlanGraph start_tree(s.start);
    PlanGraph goal_tree(s.goals);
    bool active_is_start = true;

    while (!ctx.expired(outer_has_solution)) {
        PlanGraph& active = active_is_start ? start_tree : goal_tree;
        PlanGraph& other = active_is_start ? goal_tree : start_tree;
        const bool from_start = active_is_start;
        active_is_start = !active_is_start;
        ctx.tick(current_best, local_opts, start_tree.size() + goal_tree.size());

        const Config x = sample_uniform(s.space, rng);
        const VertexId near_id = active.nearest(x);
        const Config near_cfg = active.vertex(near_id).config;
        const double d = distance(near_cfg, x);
        if (d < 1e-12) continue;
        const Config q = steer(near_cfg, x, range, d);
        if (!motion_valid(s, near_cfg, q)) continue;
        const VertexId vid = active.insert_child(near_id, q);

        VertexId cur = other.nearest(q);
        bool reached = distance(other.vertex(cur).config, q) < 1e-12;
        while (!reached) {
            const Config cur_cfg = other.vertex(cur).config;
            const double dd = distance(cur_cfg, q);
            const bool final_step = dd <= range;
            const Config step = steer(cur_cfg, q, range, dd);
            if (!motion_valid(s, cur_cfg, step)) break;
            cur = other.insert_child(cur, step);
            reached = final_step;
        }
        if (reached) {
            const VertexId meet_start = from_start ? vid : cur;
            const VertexId meet_goal = from_start ? cur : vid;
            return PathSolution::from_configs(
                compose_bidirectional(start_tree.path_from_root(meet_start),
                                      goal_tree.path_from_root(meet_goal)));
        }
    }
    return std::nullopt;
}

}  // namespace

RrtConnectStarPlanner::RrtConnectStarPlanner(const Scenario& scenario,
                                             const PlannerConfig& cfg)
    : scenario_(scenario),
      cfg_(cfg),
      start_tree_(scenario.start),
      goal_tree_(scenario.goals),
      rng_(cfg.seed),
      shortcut_rng_(RandomStream::substream(cfg.seed, 0x5c)) {
    cfg_.validate();
    policy_.gamma = cfg.gamma_override.value_or(rrt_star_gamma(scenario.space));
    policy_.range = cfg.range;
    motion_ = [this](const Config& a, const Config& b) {
        return motion_valid(scenario_, a, b);
    };
    samplers_.reserve(scenario.goals.size());
    for (const Config& goal : scenario.goals) {
        samplers_.emplace_back(scenario.start, goal);
    }
}

double RrtConnectStarPlanner::admissible_heuristic(const Config& x) const {
    double to_goal = kInf;
    for (const Config& g : scenario_.goals) {
        to_goal = std::min(to_goal, distance(x, g));
    }
    return distance(scenario_.start, x) + to_goal;
}

bool RrtConnectStarPlanner::gate_rejects(const Config& x) const {
    if (!cfg_.heuristics.sample_rejection) return false;
    const double cb = best_cost();
    return std::isfinite(cb) && admissible_heuristic(x) >= cb;
}

Config RrtConnectStarPlanner::draw_sample() {
    const double cb = best_cost();
    if (!cfg_.heuristics.informed_sampling || !std::isfinite(cb)) {
        return sample_uniform(scenario_.space, rng_);
    }
    if (samplers_.size() == 1) {
        return samplers_.front().sample(cb, scenario_.space, rng_);
    }
    // sample only ellipses that can still contain an improving path
    std::vector<const InformedSampler*> eligible;
    for (const InformedSampler& s : samplers_) {
        if (s.min_cost() <= cb) eligible.push_back(&s);
    }
    if (eligible.empty()) return sample_uniform(scenario_.space, rng_);
    const auto idx = std::min<std::size_t>(
        static_cast<std::size_t>(rng_.uniform01() * static_cast<double>(eligible.size())),
        eligible.size() - 1);
    return eligible[idx]->sample(cb, scenario_.space, rng_);
}

RrtConnectStarPlanner::IterationEvent RrtConnectStarPlanner::iterate() {
    IterationEvent ev;
    ev.c_best_before = best_cost();

    PlanGraph& active = active_is_start_ ? start_tree_ : goal_tree_;
    PlanGraph& other = active_is_start_ ? goal_tree_ : start_tree_;
    const bool from_start = active_is_start_;
    active_is_start_ = !active_is_start_;

    const Config x = draw_sample();
    if (gate_rejects(x)) {
        ev.sample_rejected = true;
        return ev;
    }
    ev.accepted_sample = x;

    const VertexId near_id = active.nearest(x);
    const Config near_cfg = active.vertex(near_id).config;
    const double d = distance(near_cfg, x);
    if (d < 1e-12) return ev;
    const Config q = steer(near_cfg, x, cfg_.range, d);
    if (gate_rejects(q)) return ev;
    if (!motion_valid(scenario_, near_cfg, q)) return ev;

    const int dim = scenario_.dimension();
    auto vid = active.rewire_insert(q, motion_, policy_.radius(active.size(), dim), {},
                                    near_id);
    if (!vid) return ev;
    (from_start ? ev.inserted_start : ev.inserted_goal).push_back(*vid);

    // greedy connect from the other tree toward the new vertex
    VertexId cur = other.nearest(q);
    bool reached = distance(other.vertex(cur).config, q) < 1e-12;
    while (!reached) {
        const Config cur_cfg = other.vertex(cur).config;
        const double dd = distance(cur_cfg, q);
        const bool final_step = dd <= cfg_.range;
        const Config step = steer(cur_cfg, q, cfg_.range, dd);
        if (gate_rejects(step)) break;
        if (!motion_valid(scenario_, cur_cfg, step)) break;
        const VertexId extra[1] = {cur};
        auto sid =
            other.rewire_insert(step, motion_, policy_.radius(other.size(), dim), extra, cur);
        if (!sid) break;
        (from_start ? ev.inserted_goal : ev.inserted_start).push_back(*sid);
        cur = *sid;
        reached = final_step;
    }
    if (reached) {
        ev.connected = true;
        record_connection(*vid, cur, from_start);
    }
    return ev;
}

void RrtConnectStarPlanner::record_connection(VertexId meet_active, VertexId meet_other,
                                              bool active_is_start) {
    const VertexId meet_start = active_is_start ? meet_active : meet_other;
    const VertexId meet_goal = active_is_start ? meet_other : meet_active;
    PathSolution full = PathSolution::from_configs(
        compose_bidirectional(start_tree_.path_from_root(meet_start),
                              goal_tree_.path_from_root(meet_goal)));
    if (has_solution() && full.length >= best_cost() - 1e-12) return;
    const std::vector<VertexId> anchors = start_tree_.insert_path(full, motion_, policy_);
    start_tree_.register_goal(anchors.back());
}

bool RrtConnectStarPlanner::maybe_local_optimize() {
    if (!has_solution()) return false;
    const double cb = best_cost();
    const double ratio = std::isinf(c_last_opt_) ? 1.0 : (c_last_opt_ - cb) / c_last_opt_;
    if (!(ratio > cfg_.opt_threshold)) return false;

    const PathSolution best = *best_path();
    const PathSolution optimized = shortcut(best, scenario_, {cfg_.scf}, shortcut_rng_);
    const std::vector<VertexId> anchors =
        start_tree_.insert_path(optimized, motion_, policy_);
    start_tree_.register_goal(anchors.back());
    ++local_opt_count_;
    c_last_opt_ = cb;
    return true;
}

PlanResult rrt_connect(const Scenario& s, const PlannerConfig& cfg, const Termination& term,
                       const RunOptions& opts) {
    cfg.validate();
    RunContext ctx(term, opts);
    RandomStream rng(RandomStream::substream(cfg.seed, 0));
    std::optional<PathSolution> path =
        rrt_connect_query(s, cfg.range, rng, ctx, kInf, 0, false);
    PlanResult r;
    if (path) {
        ctx.note_best(path->length, 0, 0);
        r.path = std::move(path);
    }
    ctx.finalize(r, r.path ? r.path->length : kInf, 0);
    return r;
}

PlanResult rrt_connect_s(const Scenario& s, const PlannerConfig& cfg, const Termination& term,
                         const RunOptions& opts) {
    cfg.validate();
    RunContext ctx(term, opts);
    RandomStream rng(RandomStream::substream(cfg.seed, 0));
    RandomStream shortcut_rng(RandomStream::substream(cfg.seed, 1));
    std::optional<PathSolution> path =
        rrt_connect_query(s, cfg.range, rng, ctx, kInf, 0, false);
    PlanResult r;
    int opt_count = 0;
    if (path) {
        ctx.note_best(path->length, 0, 0);
        PathSolution optimized = shortcut(*path, s, {cfg.scf}, shortcut_rng);
        opt_count = 1;
        ctx.note_best(optimized.length, opt_count, 0);
        r.path = std::move(optimized);
    }
    ctx.finalize(r, r.path ? r.path->length : kInf, opt_count);
    return r;
}

PlanResult m_rrt_connect_s(const Scenario& s, const PlannerConfig& cfg,
                           const Termination& term, const RunOptions& opts) {
    cfg.validate();
    RunContext ctx(term, opts);
    double best_length = kInf;
    std::optional<PathSolution> best;
    int restarts = 0;

    for (std::uint64_t restart = 0;; ++restart) {
        RandomStream rng(RandomStream::substream(cfg.seed, 2 * restart));
        RandomStream shortcut_rng(RandomStream::substream(cfg.seed, 2 * restart + 1));
        std::optional<PathSolution> path = rrt_connect_query(
            s, cfg.range, rng, ctx, best_length, restarts, std::isfinite(best_length));
        if (!path) break;  // budget expired mid-restart; discard the partial run
        PathSolution optimized = shortcut(*path, s, {cfg.scf}, shortcut_rng);
        ++restarts;
        if (optimized.length < best_length) {
            best_length = optimized.length;
            best = std::move(optimized);
        }
        ctx.note_best(best_length, restarts, 0);
        if (ctx.expired(std::isfinite(best_length))) break;
    }

    PlanResult r;
    r.path = std::move(best);
    ctx.finalize(r, best_length, restarts);
    return r;
}

PlanResult rrt_connect_star(const Scenario& s, const PlannerConfig& cfg,
                            const Termination& term, const RunOptions& opts) {
    cfg.validate();
    RunContext ctx(term, opts);
    RrtConnectStarPlanner planner(s, cfg);
    while (!ctx.expired(planner.has_solution())) {
        planner.iterate();
        ctx.tick(planner.best_cost(), 0,
                 planner.start_tree().size() + planner.goal_tree().size());
    }
    PlanResult r;
    r.path = planner.best_path();
    ctx.finalize(r, planner.best_cost(), 0);
    return r;
}

PlanResult rrt_connect_star_s(const Scenario& s, const PlannerConfig& cfg,
                              const Termination& term, const RunOptions& opts) {
    cfg.validate();
    RunContext ctx(term, opts);
    RrtConnectStarPlanner planner(s, cfg);
    while (!ctx.expired(planner.has_solution())) {
        planner.iterate();
        planner.maybe_local_optimize();
        ctx.tick(planner.best_cost(), planner.local_opt_count(),
                 planner.start_tree().size() + planner.goal_tree().size());
    }
    PlanResult r;
    r.path = planner.best_path();
    ctx.finalize(r, planner.best_cost(), planner.local_opt_count());
    return r;
}

PlanResult run_planner(PlannerKind kind, const Scenario& s, const PlannerConfig& cfg,
                       const Termination& term, const RunOptions& opts) {
    switch (kind) {
        case PlannerKind::RrtConnect: return rrt_connect(s, cfg, term, opts);
        case PlannerKind::RrtConnectS: return rrt_connect_s(s, cfg, term, opts);
        case PlannerKind::MRrtConnectS: return m_rrt_connect_s(s, cfg, term, opts);
        case PlannerKind::RrtConnectStar: return rrt_connect_star(s, cfg, term, opts);
        case PlannerKind::RrtConnectStarS: return rrt_connect_star_s(s, cfg, term, opts);
    }
    throw ContractViolation("unknown planner kind");
}

}  // namespace anyplan
