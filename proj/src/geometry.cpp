#include "anyplan/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "anyplan/errors.hpp"

namespace anyplan {

double polygon_signed_area(const ConvexPolygon& poly) {
    double twice_area = 0.0;
    const auto& pts = poly.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec2& p = pts[i];
        const Vec2& q = pts[(i + 1) % pts.size()];
        twice_area += cross2(p, q);
    }
    return 0.5 * twice_area;
}

bool polygon_is_convex_ccw(const ConvexPolygon& poly) {
    const auto& pts = poly.points;
    if (pts.size() < 3) return false;
    if (polygon_signed_area(poly) <= kGeomEps) return false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec2& a = pts[i];
        const Vec2& b = pts[(i + 1) % pts.size()];
        const Vec2& c = pts[(i + 2) % pts.size()];
        if (cross2(b - a, c - b) < -kGeomEps) return false;
    }
    return true;
}

bool point_in_polygon(const ConvexPolygon& poly, const Vec2& p) {
    // CCW convex polygon: inside (or on the boundary) iff p is on or left of
    // every edge.
    const auto& pts = poly.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec2& a = pts[i];
        const Vec2& b = pts[(i + 1) % pts.size()];
        if (cross2(b - a, p - a) < -kGeomEps) return false;
    }
    return true;
}

bool point_in_circle(const Circle& circle, const Vec2& p) {
    return (p - circle.center).norm() <= circle.radius + kGeomEps;
}

double point_segment_distance(const Vec2& p, const Segment2& s) {
    const Vec2 d = s.b - s.a;
    const double len2 = d.squaredNorm();
    if (len2 <= kGeomEps * kGeomEps) return (p - s.a).norm();
    const double t = std::clamp((p - s.a).dot(d) / len2, 0.0, 1.0);
    return (p - (s.a + t * d)).norm();
}

namespace {

int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double v = cross2(b - a, c - a);
    if (v > kGeomEps) return 1;
    if (v < -kGeomEps) return -1;
    return 0;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    // assumes p collinear with a-b
    return p.x() >= std::min(a.x(), b.x()) - kGeomEps &&
           p.x() <= std::max(a.x(), b.x()) + kGeomEps &&
           p.y() >= std::min(a.y(), b.y()) - kGeomEps &&
           p.y() <= std::max(a.y(), b.y()) + kGeomEps;
}

}  // namespace

bool segments_intersect(const Segment2& s1, const Segment2& s2) {
    const int o1 = orientation(s1.a, s1.b, s2.a);
    const int o2 = orientation(s1.a, s1.b, s2.b);
    const int o3 = orientation(s2.a, s2.b, s1.a);
    const int o4 = orientation(s2.a, s2.b, s1.b);

    if (o1 != o2 && o3 != o4) return true;

    // touching and collinear-overlap cases count as intersection
    if (o1 == 0 && on_segment(s1.a, s1.b, s2.a)) return true;
    if (o2 == 0 && on_segment(s1.a, s1.b, s2.b)) return true;
    if (o3 == 0 && on_segment(s2.a, s2.b, s1.a)) return true;
    if (o4 == 0 && on_segment(s2.a, s2.b, s1.b)) return true;
    return false;
}

bool segment_intersects_polygon(const ConvexPolygon& poly, const Segment2& s) {
    if (point_in_polygon(poly, s.a) || point_in_polygon(poly, s.b)) return true;
    const auto& pts = poly.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Segment2 edge{pts[i], pts[(i + 1) % pts.size()]};
        if (segments_intersect(s, edge)) return true;
    }
    return false;
}

bool segment_intersects_circle(const Circle& circle, const Segment2& s) {
    return point_segment_distance(circle.center, s) <= circle.radius + kGeomEps;
}

std::vector<Segment2> arm_forward_kinematics(std::span<const double> link_lengths,
                                             const Vec2& base,
                                             std::span<const double> angles) {
    require(link_lengths.size() == angles.size(),
            "arm_forward_kinematics: link/angle count mismatch");
    std::vector<Segment2> links;
    links.reserve(link_lengths.size());
    Vec2 joint = base;
    double heading = 0.0;
    for (std::size_t i = 0; i < link_lengths.size(); ++i) {
        heading += angles[i];
        Vec2 next = joint + link_lengths[i] * Vec2(std::cos(heading), std::sin(heading));
        links.push_back({joint, next});
        joint = next;
    }
    return links;
}

}  // namespace anyplan
