#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "anyplan/geometry.hpp"
#include "anyplan/space.hpp"

namespace anyplan {

enum class WorldKind { Point2d, PlanarArm };

using Obstacle = std::variant<ConvexPolygon, Circle>;

/// Desk-scale world: a 2D point robot or a planar N-link arm among convex
/// polygon and circle obstacles. Immutable after load; all queries are
/// read-only and thread-safe.
struct WorldGeometry {
    WorldKind kind = WorldKind::Point2d;
    std::vector<Obstacle> obstacles;
    // planar_arm only:
    std::vector<double> link_lengths;
    Vec2 base = Vec2::Zero();
};

/// A planning problem: world geometry, configuration-space bounds, one start,
/// a nonempty goal set, and the motion-check resolution (max step between
/// validity checks, in configuration-space units).
struct Scenario {
    std::string name;
    SpaceBounds space;
    WorldGeometry world;
    Config start;
    std::vector<Config> goals;
    double resolution = 0.0;

    int dimension() const { return space.dimension(); }
};

bool operator==(const Scenario& a, const Scenario& b);

/// True iff q is collision-free. Point robot: the point is not inside (or on
/// the boundary of) any obstacle. Arm: no link touches an obstacle and no two
/// non-adjacent links intersect.
bool is_valid(const Scenario& s, const Config& q);

/// True iff every interpolated config between a and b, at uniform spacing
/// <= resolution and inclusive of both endpoints, is valid. The step count is
/// the smallest power of two that achieves the spacing, so halving the
/// resolution always refines the same sample set.
bool motion_valid(const Scenario& s, const Config& a, const Config& b);

/// Parse and fully validate a scenario document. Throws ScenarioError with
/// the offending field on any parse or invariant failure.
Scenario load_scenario(const std::string& text);
Scenario load_scenario_file(const std::filesystem::path& path);

/// Serialize back to the scenario document format (load/save round-trips).
std::string save_scenario(const Scenario& s);

}  // namespace anyplan
