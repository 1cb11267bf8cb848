#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "anyplan/errors.hpp"
#include "anyplan/planners.hpp"
#include "support.hpp"

using namespace anyplan;
using namespace testsupport;

namespace {

bool paths_equal(const PathSolution& a, const PathSolution& b) {
    if (a.configs.size() != b.configs.size()) return false;
    for (std::size_t i = 0; i < a.configs.size(); ++i) {
        if (a.configs[i] != b.configs[i]) return false;
    }
    return true;
}

void check_path_contract(const Scenario& s, const PathSolution& p) {
    REQUIRE(p.configs.size() >= 2);
    CHECK(distance(p.configs.front(), s.start) <= 1e-12);
    double to_goal = kInf;
    for (const Config& g : s.goals) to_goal = std::min(to_goal, distance(p.configs.back(), g));
    CHECK(to_goal <= 1e-12);
    for (std::size_t i = 0; i + 1 < p.configs.size(); ++i) {
        CHECK(motion_valid(s, p.configs[i], p.configs[i + 1]));
    }
    CHECK(p.length == doctest::Approx(path_length(p.configs)).epsilon(1e-12));
}

Scenario walled_off_goal() {
    Scenario s = empty_world_2d();
    // box fully enclosing the goal at (9.5, 9.5)
    s.world.obstacles.push_back(rect(8.5, 8.5, 10.0, 8.7));
    s.world.obstacles.push_back(rect(8.5, 8.5, 8.7, 10.0));
    return s;
}

}  // namespace

TEST_CASE("rrt_connect finds a path in the empty world") {
    const Scenario s = empty_world_2d();
    PlannerConfig cfg;
    cfg.range = 1.0;
    cfg.seed = 5;
    const PlanResult r = rrt_connect(s, cfg, Termination::iteration_budget(5000));
    REQUIRE(r.path.has_value());
    check_path_contract(s, *r.path);
    CHECK(r.path->length >= distance(s.start, s.goals[0]) - 1e-12);
    CHECK(r.first_solution_time.has_value());
    CHECK(r.local_opt_count == 0);
}

TEST_CASE("rrt_connect reports no path for a walled-off goal") {
    const Scenario s = walled_off_goal();
    PlannerConfig cfg;
    cfg.range = 1.0;
    cfg.seed = 1;
    const PlanResult r = rrt_connect(s, cfg, Termination::iteration_budget(3000));
    CHECK_FALSE(r.path.has_value());
    CHECK_FALSE(r.first_solution_time.has_value());
    CHECK(r.iterations == 3000);
}

TEST_CASE("rrt_connect is deterministic under a fixed seed") {
    const Scenario s = load_suite_scenario("narrow-gap2d.json");
    PlannerConfig cfg;
    cfg.range = 1.0;
    cfg.seed = 7;
    const Termination term = Termination::iteration_budget(5000);
    const PlanResult a = rrt_connect(s, cfg, term);
    const PlanResult b = rrt_connect(s, cfg, term);
    REQUIRE(a.path.has_value());
    REQUIRE(b.path.has_value());
    CHECK(paths_equal(*a.path, *b.path));
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("one RRTConnect* iteration: rejection leaves the graph unchanged") {
    const Scenario s = load_suite_scenario("narrow-gap2d.json");
    PlannerConfig cfg;
    cfg.range = 1.0;
    cfg.seed = 3;
    RrtConnectStarPlanner planner(s, cfg);

    bool saw_rejection = false;
    for (int i = 0; i < 4000 && !saw_rejection; ++i) {
        const std::size_t before =
            planner.start_tree().size() + planner.goal_tree().size();
        const auto ev = planner.iterate();
        if (ev.sample_rejected) {
            saw_rejection = true;
            CHECK(planner.start_tree().size() + planner.goal_tree().size() == before);
            CHECK(std::isfinite(ev.c_best_before));  // rejection needs a best cost
        }
    }
    CHECK(saw_rejection);
}

TEST_CASE("one RRTConnect* iteration: first connection makes the snapshot finite") {
    const Scenario s = load_suite_scenario("narrow-gap2d.json");
    PlannerConfig cfg;
    cfg.range = 1.0;
    cfg.seed = 11;
    RrtConnectStarPlanner planner(s, cfg);
    CHECK_FALSE(planner.start_tree().snapshot().has_solution);
    for (int i = 0; i < 5000 && !planner.has_solution(); ++i) {
        const auto ev = planner.iterate();
        if (ev.connected) break;
    }
    REQUIRE(planner.has_solution());
    const GraphSnapshot snap = planner.start_tree().snapshot();
    CHECK(snap.has_solution);
    CHECK(std::isfinite(snap.best_cost));
    CHECK(snap.best_cost == doctest::Approx(planner.best_cost()));
}

TEST_CASE("sample rejection: inserted configs can always improve the best cost") {
    const Scenario s = load_suite_scenario("narrow-gap2d.json");
    PlannerConfig cfg;
    cfg.range = 1.0;
    cfg.seed = 13;
    REQUIRE(cfg.heuristics.sample_rejection);
    RrtConnectStarPlanner planner(s, cfg);

    int inserted_after_solution = 0;
    for (int i = 0; i < 6000; ++i) {
        const auto ev = planner.iterate();
        if (!std::isfinite(ev.c_best_before)) continue;
        for (VertexId id : ev.inserted_start) {
            ++inserted_after_solution;
            CHECK(planner.admissible_heuristic(planner.start_tree().vertex(id).config) <
                  ev.c_best_before);
        }
        for (VertexId id : ev.inserted_goal) {
            ++inserted_after_solution;
            CHECK(planner.admissible_heuristic(planner.goal_tree().vertex(id).config) <
                  ev.c_best_before);
        }
    }
    CHECK(inserted_after_solution > 50);
}

TEST_CASE("informed sampling: accepted samples satisfy the ellipse inequality") {
    const Scenario s = load_suite_scenario("narrow-gap2d.json");
    PlannerConfig cfg;
    cfg.range = 1.0;
    cfg.seed = 17;
    REQUIRE(cfg.heuristics.informed_sampling);
    RrtConnectStarPlanner planner(s, cfg);

    int accepted_after_solution = 0;
    for (int i = 0; i < 6000; ++i) {
        const auto ev = planner.iterate();
        if (!std::isfinite(ev.c_best_before) || !ev.accepted_sample) continue;
        ++accepted_after_solution;
        CHECK(planner.admissible_heuristic(*ev.accepted_sample) <=
              ev.c_best_before + 1e-9);
    }
    CHECK(accepted_after_solution > 50);
}

TEST_CASE("rrt_connect_star approaches the straight-line optimum in the empty world") {
    const Scenario s = load_suite_scenario("empty2d.json");
    const double optimum = distance(s.start, s.goals[0]);
    PlannerConfig cfg;
    cfg.range = 1.0;
    cfg.seed = 2;
    const PlanResult r = rrt_connect_star(s, cfg, Termination::iteration_budget(20000));
    REQUIRE(r.path.has_value());
    check_path_contract(s, *r.path);
    CHECK(r.path->length <= 1.05 * optimum);
}

TEST_CASE("rrt_connect_star returns no path when the goal is unreachable") {
    const Scenario s = walled_off_goal();
    PlannerConfig cfg;
    cfg.range = 1.0;
    cfg.seed = 4;
    const PlanResult r = rrt_connect_star(s, cfg, Termination::iteration_budget(2000));
    CHECK_FALSE(r.path.has_value());
}

TEST_CASE("anytime planners: trace best length is non-increasing once finite") {
    const Scenario s = load_suite_scenario("narrow-gap2d.json");
    PlannerConfig cfg;
    cfg.range = 1.0;
    cfg.seed = 19;
    for (PlannerKind kind : {PlannerKind::RrtConnectStar, PlannerKind::RrtConnectStarS,
                             PlannerKind::MRrtConnectS}) {
        const PlanResult r = run_planner(kind, s, cfg, Termination::iteration_budget(6000));
        REQUIRE(r.path.has_value());
        REQUIRE(!r.trace.samples.empty());
        double prev_t = -1.0;
        double prev_best = kInf;
        for (const TraceSample& sample : r.trace.samples) {
            CHECK(sample.t > prev_t);
            if (std::isfinite(prev_best)) CHECK(sample.best_length <= prev_best + 1e-12);
            prev_t = sample.t;
            prev_best = std::min(prev_best, sample.best_length);
        }
        CHECK(r.trace.first_solution_time.has_value());
        // iteration-budget traces stamp t with iteration counts
        CHECK(*r.trace.first_solution_time ==
              doctest::Approx(std::round(*r.trace.first_solution_time)));
    }
}

TEST_CASE("m_rrt_connect_s with a single-restart budget equals rrt_connect_s") {
    const Scenario s = load_suite_scenario("narrow-gap2d.json");
    PlannerConfig cfg;
    cfg.range = 1.0;
    cfg.scf = 4.0;
    cfg.seed = 23;

    // measure the iterations one bare RRTConnect query needs for this seed
    const PlanResult probe = rrt_connect(s, cfg, Termination::iteration_budget(100000));
    REQUIRE(probe.path.has_value());

    const Termination one_restart = Termination::iteration_budget(probe.iterations);
    const PlanResult m = m_rrt_connect_s(s, cfg, one_restart);
    const PlanResult single = rrt_connect_s(s, cfg, one_restart);
    REQUIRE(m.path.has_value());
    REQUIRE(single.path.has_value());
    CHECK(m.local_opt_count == 1);
    CHECK(paths_equal(*m.path, *single.path));
}

TEST_CASE("m_rrt_connect_s keeps the best path and counts completed restarts") {
    const Scenario s = load_suite_scenario("thin-posts2d.json");
    PlannerConfig cfg;
    cfg.range = 1.0;
    cfg.scf = 3.0;
    cfg.seed = 29;
    const PlanResult r = m_rrt_connect_s(s, cfg, Termination::iteration_budget(4000));
    REQUIRE(r.path.has_value());
    check_path_contract(s, *r.path);
    CHECK(r.local_opt_count >= 2);

    // restart count grows roughly linearly with the iteration budget
    const PlanResult r4 = m_rrt_connect_s(s, cfg, Termination::iteration_budget(16000));
    CHECK(r4.local_opt_count >= 2 * r.local_opt_count);
    CHECK(r4.local_opt_count <= 8 * r.local_opt_count);
    CHECK(r4.path->length <= r.path->length + 1e-12);
}

TEST_CASE("rrt_connect_star_s trigger semantics") {
    const Scenario s = load_suite_scenario("narrow-gap2d.json");

    SUBCASE("the first solution always triggers an optimization") {
        PlannerConfig cfg;
        cfg.range = 1.0;
        cfg.seed = 31;
        cfg.opt_threshold = 0.5;  // high threshold; only the infinity rule fires it
        RrtConnectStarPlanner planner(s, cfg);
        while (!planner.has_solution()) planner.iterate();
        CHECK(planner.local_opt_count() == 0);
        CHECK(planner.maybe_local_optimize());
        CHECK(planner.local_opt_count() == 1);
    }

    SUBCASE("a near-one threshold keeps the optimizer almost idle") {
        PlannerConfig cfg;
        cfg.range = 1.0;
        cfg.seed = 37;
        cfg.opt_threshold = 0.99;
        const PlanResult r =
            rrt_connect_star_s(s, cfg, Termination::iteration_budget(6000));
        REQUIRE(r.path.has_value());
        CHECK(r.local_opt_count == 1);  // the initial fire; 99% improvements never recur
    }

    SUBCASE("a zero threshold fires on every strict improvement") {
        PlannerConfig cfg;
        cfg.range = 1.0;
        cfg.seed = 41;
        cfg.opt_threshold = 0.0;
        const PlanResult low =
            rrt_connect_star_s(s, cfg, Termination::iteration_budget(6000));
        cfg.opt_threshold = 0.2;
        const PlanResult high =
            rrt_connect_star_s(s, cfg, Termination::iteration_budget(6000));
        CHECK(low.local_opt_count > high.local_opt_count);
    }
}

TEST_CASE("rrt_connect_star_s output satisfies the path contract everywhere") {
    PlannerConfig cfg;
    cfg.range = 1.0;
    cfg.seed = 43;
    for (const char* file : {"narrow-gap2d.json", "thin-posts2d.json"}) {
        const Scenario s = load_suite_scenario(file);
        const PlanResult r =
            rrt_connect_star_s(s, cfg, Termination::iteration_budget(3000));
        REQUIRE(r.path.has_value());
        check_path_contract(s, *r.path);
        CHECK(r.local_opt_count >= 1);
    }
    // 4-link arm through the wall slot
    const Scenario arm = load_suite_scenario("arm4-slot.json");
    PlannerConfig arm_cfg;
    arm_cfg.range = 0.5;
    arm_cfg.seed = 43;
    const PlanResult r = rrt_connect_star_s(arm, arm_cfg, Termination::iteration_budget(8000));
    REQUIRE(r.path.has_value());
    check_path_contract(arm, *r.path);
}

TEST_CASE("all planners are deterministic under iteration budgets") {
    const Scenario s = load_suite_scenario("thin-posts2d.json");
    for (const std::string& name : planner_names()) {
        PlannerConfig cfg;
        cfg.range = 1.0;
        cfg.seed = 47;
        const Termination term = Termination::iteration_budget(2500);
        const PlanResult a = run_planner(planner_from_name(name), s, cfg, term);
        const PlanResult b = run_planner(planner_from_name(name), s, cfg, term);
        REQUIRE(a.path.has_value() == b.path.has_value());
        if (a.path) {
            CHECK(paths_equal(*a.path, *b.path));
            check_path_contract(s, *a.path);
        }
        CHECK(a.local_opt_count == b.local_opt_count);
        CHECK(a.iterations == b.iterations);
        CHECK(a.first_solution_time == b.first_solution_time);
        REQUIRE(a.trace.samples.size() == b.trace.samples.size());
        for (std::size_t i = 0; i < a.trace.samples.size(); ++i) {
            CHECK(a.trace.samples[i].t == b.trace.samples[i].t);
            CHECK(a.trace.samples[i].best_length == b.trace.samples[i].best_length);
        }
    }
}

TEST_CASE("time-budget termination honors the first-solution overrun rule") {
    // soft budget on an easy world: runs the full budget, returns a solution
    const Scenario s = empty_world_2d();
    PlannerConfig cfg;
    cfg.range = 1.0;
    cfg.seed = 53;
    const PlanResult r =
        rrt_connect_star(s, cfg, Termination::first_solution_then_budget(0.05));
    CHECK(r.path.has_value());
    CHECK(r.planning_wall_seconds >= 0.05);

    // hard goal with a strict tiny budget: expires without a solution
    const Scenario trap = walled_off_goal();
    const PlanResult r2 = rrt_connect_star(trap, cfg, Termination::time_budget(0.05));
    CHECK_FALSE(r2.path.has_value());
}

TEST_CASE("make_preset reproduces the task parameter tables") {
    // vine task
    CHECK(make_preset("vine", PlannerKind::RrtConnectStar).range == 2.5);
    const PlannerConfig vine_ss = make_preset("vine", PlannerKind::RrtConnectStarS);
    CHECK(vine_ss.range == 2.5);
    CHECK(vine_ss.scf == 3.0);
    CHECK(vine_ss.opt_threshold == 0.01);
    const PlannerConfig vine_cs = make_preset("vine", PlannerKind::RrtConnectS);
    CHECK(vine_cs.range == 0.5);
    CHECK(vine_cs.scf == 4.0);
    const PlannerConfig vine_m = make_preset("vine", PlannerKind::MRrtConnectS);
    CHECK(vine_m.range == 0.5);
    CHECK(vine_m.scf == 4.0);

    // cubicle task
    CHECK(make_preset("cubicle", PlannerKind::RrtConnectStar).range == 0.5);
    const PlannerConfig cub_ss = make_preset("cubicle", PlannerKind::RrtConnectStarS);
    CHECK(cub_ss.range == 3.0);
    CHECK(cub_ss.scf == 3.0);
    CHECK(cub_ss.opt_threshold == 0.11);
    const PlannerConfig cub_cs = make_preset("cubicle", PlannerKind::RrtConnectS);
    CHECK(cub_cs.range == 0.5);
    CHECK(cub_cs.scf == 3.0);
    const PlannerConfig cub_m = make_preset("cubicle", PlannerKind::MRrtConnectS);
    CHECK(cub_m.range == 0.5);
    CHECK(cub_m.scf == 3.0);

    // informed heuristics stay enabled for the optimizing planners
    CHECK(vine_ss.heuristics.informed_sampling);
    CHECK(vine_ss.heuristics.sample_rejection);
    CHECK(make_preset("cubicle", PlannerKind::RrtConnectStar).heuristics.informed_sampling);

    CHECK_THROWS_AS(make_preset("orchard", PlannerKind::RrtConnect), ContractViolation);
}

TEST_CASE("planner name round-trip and config validation") {
    for (const std::string& name : planner_names()) {
        CHECK(planner_name(planner_from_name(name)) == name);
    }
    CHECK_THROWS_AS(planner_from_name("prm_star"), ContractViolation);

    PlannerConfig bad;
    bad.range = 0.0;
    CHECK_THROWS_AS(bad.validate(), ContractViolation);
    bad = PlannerConfig{};
    bad.opt_threshold = 1.0;
    CHECK_THROWS_AS(bad.validate(), ContractViolation);
    bad = PlannerConfig{};
    bad.scf = -1.0;
    CHECK_THROWS_AS(bad.validate(), ContractViolation);
}

TEST_CASE("termination parsing and labels") {
    const Termination it = Termination::parse("5000it");
    CHECK(it.kind == Termination::Kind::IterationBudget);
    CHECK(it.iterations == 5000);
    CHECK(it.label() == "5000it");

    const Termination soft = Termination::parse("3");
    CHECK(soft.kind == Termination::Kind::FirstSolutionThenBudget);
    CHECK(soft.seconds == 3.0);
    CHECK(soft.label() == "3");

    const Termination strict = Termination::parse("0.5s");
    CHECK(strict.kind == Termination::Kind::TimeBudget);
    CHECK(strict.seconds == 0.5);
    CHECK(strict.label() == "0.5s");

    CHECK_THROWS_AS(Termination::parse("abc"), ContractViolation);
    CHECK_THROWS_AS(Termination::parse("-3"), ContractViolation);
    CHECK_THROWS_AS(Termination::parse("0it"), ContractViolation);
}
