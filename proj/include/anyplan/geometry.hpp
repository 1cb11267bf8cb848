#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace anyplan {

using Vec2 = Eigen::Vector2d;

/// Degeneracy tolerance for the exact 2D predicates. Obstacle boundaries
/// count as collision, so all containment/intersection tests are closed.
inline constexpr double kGeomEps = 1e-12;

struct Segment2 {
    Vec2 a;
    Vec2 b;
};

struct Circle {
    Vec2 center;
    double radius = 0.0;
};

/// Convex polygon, vertices counterclockwise.
struct ConvexPolygon {
    std::vector<Vec2> points;
};

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double polygon_signed_area(const ConvexPolygon& poly);
bool polygon_is_convex_ccw(const ConvexPolygon& poly);

bool point_in_polygon(const ConvexPolygon& poly, const Vec2& p);
bool point_in_circle(const Circle& circle, const Vec2& p);
double point_segment_distance(const Vec2& p, const Segment2& s);
bool segments_intersect(const Segment2& s1, const Segment2& s2);
bool segment_intersects_polygon(const ConvexPolygon& poly, const Segment2& s);
bool segment_intersects_circle(const Circle& circle, const Segment2& s);

/// Planar-arm forward kinematics. Joint angles are cumulative: link i points
/// at angle angles[0] + ... + angles[i] in the world frame. Returns one
/// segment per link, from joint i to joint i+1.
std::vector<Segment2> arm_forward_kinematics(std::span<const double> link_lengths,
                                             const Vec2& base,
                                             std::span<const double> angles);

}  // namespace anyplan
