#pragma once

#include "anyplan/random.hpp"
#include "anyplan/scenario.hpp"
#include "anyplan/space.hpp"

namespace anyplan {

/// Iteration budget for one shortcut invocation: round(scf * n_vertices),
/// at least 1, where n_vertices counts the path as passed in.
struct ShortcutBudget {
    double scf = 3.0;
};

int shortcut_iterations(double scf, std::size_t n_vertices);

/// Random-shortcut local optimizer. Each round draws two points uniformly by
/// arc length (possibly interior to segments) and splices in the straight
/// chord between them when it is collision-free and strictly shorter than the
/// subpath it replaces. Length never increases, endpoints are preserved
/// bit-exactly, and the result stays motion-valid.
PathSolution shortcut(const PathSolution& p, const Scenario& scenario,
                      const ShortcutBudget& budget, RandomStream& rng);

}  // namespace anyplan
