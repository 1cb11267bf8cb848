#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "anyplan/errors.hpp"
#include "anyplan/shortcut.hpp"
#include "support.hpp"

using namespace anyplan;
using namespace testsupport;

TEST_CASE("shortcut_iterations") {
    CHECK(shortcut_iterations(3.0, 10) == 30);
    CHECK(shortcut_iterations(0.01, 2) == 1);  // floor clamp
    CHECK(shortcut_iterations(4.0, 7) == 28);
    CHECK_THROWS_AS(shortcut_iterations(0.0, 5), ContractViolation);
    CHECK_THROWS_AS(shortcut_iterations(2.0, 1), ContractViolation);
}

TEST_CASE("a straight two-vertex path is a fixed point") {
    const Scenario s = empty_world_2d();
    const PathSolution p =
        PathSolution::from_configs({make_config({1, 1}), make_config({7, 3})});
    RandomStream rng(1);
    const PathSolution out = shortcut(p, s, {5.0}, rng);
    REQUIRE(out.configs.size() == 2);
    CHECK(out.configs.front() == p.configs.front());
    CHECK(out.configs.back() == p.configs.back());
    CHECK(out.length == doctest::Approx(p.length));
}

TEST_CASE("L-path in the empty world shortens to nearly the diagonal") {
    const Scenario s = empty_world_2d();
    const PathSolution l_path = PathSolution::from_configs(
        {make_config({1, 1}), make_config({1, 2}), make_config({2, 2})});
    const double optimum = std::sqrt(2.0);

    double total = 0.0;
    for (int seed = 0; seed < 50; ++seed) {
        RandomStream rng(seed);
        const PathSolution out = shortcut(l_path, s, {200.0}, rng);  // ample budget
        CHECK(out.length <= l_path.length + 1e-12);
        CHECK(out.configs.front() == l_path.configs.front());
        CHECK(out.configs.back() == l_path.configs.back());
        total += out.length;
    }
    const double mean = total / 50.0;
    CHECK(mean <= optimum * 1.01);
    CHECK(mean >= optimum - 1e-9);
}

TEST_CASE("blocked corridor: no valid chord leaves the path unchanged") {
    // an L-shaped corridor of width 2e-4 around the path; chords between the
    // legs clip the inner block except within a hair of the corner, which the
    // seeded arc-length draws never hit
    const double a = 1e-4;
    Scenario s = empty_world_2d(0.0, 10.0, 0.05);
    s.world.obstacles.clear();
    s.world.obstacles.push_back(rect(0.0, 0.0, 1.0 - a, 10.0));        // left of leg 1
    s.world.obstacles.push_back(rect(1.0 + a, 0.0, 10.0, 8.5 - a));    // inside corner
    s.world.obstacles.push_back(rect(1.0 - a, 8.5 + a, 10.0, 10.0));   // above leg 2
    const PathSolution l_path = PathSolution::from_configs(
        {make_config({1.0, 0.5}), make_config({1.0, 8.5}), make_config({9.5, 8.5})});
    REQUIRE(motion_valid(s, l_path.configs[0], l_path.configs[1]));
    REQUIRE(motion_valid(s, l_path.configs[1], l_path.configs[2]));

    RandomStream rng(3);
    const PathSolution out = shortcut(l_path, s, {100.0}, rng);
    CHECK(out.length == doctest::Approx(l_path.length));
}

TEST_CASE("interior-of-segment chords can shorten a two-segment detour") {
    // vertex-only sampling could never touch this case: the improving chord
    // starts and ends strictly inside segments
    const Scenario s = empty_world_2d();
    const PathSolution detour = PathSolution::from_configs(
        {make_config({0.5, 0.5}), make_config({5, 6}), make_config({9.5, 0.5})});
    RandomStream rng(9);
    const PathSolution out = shortcut(detour, s, {100.0}, rng);
    CHECK(out.length < detour.length - 0.5);
}

TEST_CASE("shortcut safety properties on random valid paths") {
    Scenario s = empty_world_2d();
    s.world.obstacles.push_back(rect(3, 3, 5, 5));
    s.world.obstacles.push_back(Circle{Vec2(7, 2), 0.8});

    RandomStream rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const Config origin = [&] {
            for (;;) {
                const Config q = sample_uniform(s.space, rng);
                if (is_valid(s, q)) return q;
            }
        }();
        const auto configs = random_valid_walk(s, origin, rng, 6, 2.0);
        if (configs.size() < 2) continue;
        const PathSolution p = PathSolution::from_configs(configs);
        RandomStream srng(trial);
        const PathSolution out = shortcut(p, s, {3.0}, srng);

        CHECK(out.length <= p.length + 1e-12);
        CHECK(out.configs.front() == p.configs.front());
        CHECK(out.configs.back() == p.configs.back());
        for (std::size_t i = 0; i + 1 < out.configs.size(); ++i) {
            CHECK(motion_valid(s, out.configs[i], out.configs[i + 1]));
        }
    }
}
