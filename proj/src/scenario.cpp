#include "anyplan/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "anyplan/errors.hpp"

namespace anyplan {

using nlohmann::json;

bool operator==(const Scenario& a, const Scenario& b) {
    auto vec_eq = [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        return x.size() == y.size() && x == y;
    };
    if (a.name != b.name || a.resolution != b.resolution) return false;
    if (!vec_eq(a.space.lower, b.space.lower) || !vec_eq(a.space.upper, b.space.upper))
        return false;
    if (!vec_eq(a.start, b.start)) return false;
    if (a.goals.size() != b.goals.size()) return false;
    for (std::size_t i = 0; i < a.goals.size(); ++i) {
        if (!vec_eq(a.goals[i], b.goals[i])) return false;
    }
    const WorldGeometry& wa = a.world;
    const WorldGeometry& wb = b.world;
    if (wa.kind != wb.kind || wa.link_lengths != wb.link_lengths) return false;
    if (wa.kind == WorldKind::PlanarArm && wa.base != wb.base) return false;
    if (wa.obstacles.size() != wb.obstacles.size()) return false;
    for (std::size_t i = 0; i < wa.obstacles.size(); ++i) {
        if (wa.obstacles[i].index() != wb.obstacles[i].index()) return false;
        if (const auto* pa = std::get_if<ConvexPolygon>(&wa.obstacles[i])) {
            const auto& pb = std::get<ConvexPolygon>(wb.obstacles[i]);
            if (pa->points.size() != pb.points.size()) return false;
            for (std::size_t k = 0; k < pa->points.size(); ++k) {
                if (pa->points[k] != pb.points[k]) return false;
            }
        } else {
            const auto& ca = std::get<Circle>(wa.obstacles[i]);
            const auto& cb = std::get<Circle>(wb.obstacles[i]);
            if (ca.center != cb.center || ca.radius != cb.radius) return false;
        }
    }
    return true;
}

namespace {

bool point_hits_obstacle(const Obstacle& obstacle, const Vec2& p) {
    if (const auto* poly = std::get_if<ConvexPolygon>(&obstacle)) {
        return point_in_polygon(*poly, p);
    }
    return point_in_circle(std::get<Circle>(obstacle), p);
}

bool segment_hits_obstacle(const Obstacle& obstacle, const Segment2& s) {
    if (const auto* poly = std::get_if<ConvexPolygon>(&obstacle)) {
        return segment_intersects_polygon(*poly, s);
    }
    return segment_intersects_circle(std::get<Circle>(obstacle), s);
}

}  // namespace

bool is_valid(const Scenario& s, const Config& q) {
    if (s.world.kind == WorldKind::Point2d) {
        const Vec2 p(q[0], q[1]);
        for (const auto& obstacle : s.world.obstacles) {
            if (point_hits_obstacle(obstacle, p)) return false;
        }
        return true;
    }
    const std::vector<Segment2> links = arm_forward_kinematics(
        s.world.link_lengths, s.world.base, {q.data(), static_cast<std::size_t>(q.size())});
    for (const auto& link : links) {
        for (const auto& obstacle : s.world.obstacles) {
            if (segment_hits_obstacle(obstacle, link)) return false;
        }
    }
    // self-collision between non-adjacent links only
    for (std::size_t i = 0; i + 2 < links.size(); ++i) {
        for (std::size_t j = i + 2; j < links.size(); ++j) {
            if (segments_intersect(links[i], links[j])) return false;
        }
    }
    return true;
}

bool motion_valid(const Scenario& s, const Config& a, const Config& b) {
    const double dist = distance(a, b);
    std::size_t steps = 1;
    while (dist / static_cast<double>(steps) > s.resolution) steps *= 2;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(steps);
        if (!is_valid(s, interpolate(a, b, t))) return false;
    }
    return true;
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ScenarioError(field + ": " + what);
}

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            fail(where.empty() ? item.key() : where + "." + item.key(), "unknown key");
        }
    }
}

Eigen::VectorXd parse_vector(const json& arr, const std::string& field) {
    if (!arr.is_array() || arr.empty()) fail(field, "expected a nonempty array of numbers");
    Eigen::VectorXd v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) fail(field, "expected a number at index " + std::to_string(i));
        v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
    }
    return v;
}

Vec2 parse_point(const json& arr, const std::string& field) {
    Eigen::VectorXd v = parse_vector(arr, field);
    if (v.size() != 2) fail(field, "expected a 2D point");
    return Vec2(v[0], v[1]);
}

Obstacle parse_obstacle(const json& obj, const std::string& field) {
    if (!obj.is_object()) fail(field, "expected an object");
    if (!obj.contains("type")) fail(field + ".type", "missing");
    const std::string type = obj.at("type").get<std::string>();
    if (type == "polygon") {
        check_keys(obj, field, {"type", "points"});
        if (!obj.contains("points")) fail(field + ".points", "missing");
        ConvexPolygon poly;
        const json& pts = obj.at("points");
        if (!pts.is_array() || pts.size() < 3) fail(field + ".points", "need >= 3 points");
        for (std::size_t i = 0; i < pts.size(); ++i) {
            poly.points.push_back(
                parse_point(pts[i], field + ".points[" + std::to_string(i) + "]"));
        }
        if (!polygon_is_convex_ccw(poly)) {
            fail(field + ".points", "polygon must be convex with counterclockwise vertices");
        }
        return poly;
    }
    if (type == "circle") {
        check_keys(obj, field, {"type", "center", "radius"});
        if (!obj.contains("center")) fail(field + ".center", "missing");
        if (!obj.contains("radius")) fail(field + ".radius", "missing");
        Circle c;
        c.center = parse_point(obj.at("center"), field + ".center");
        c.radius = obj.at("radius").get<double>();
        if (!(c.radius > 0.0)) fail(field + ".radius", "must be > 0");
        return c;
    }
    fail(field + ".type", "unknown obstacle type '" + type + "'");
}

}  // namespace

Scenario load_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ScenarioError("document: expected a JSON object");

    Scenario s;
    if (!doc.contains("kind")) fail("kind", "missing");
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "point2d") {
        s.world.kind = WorldKind::Point2d;
        check_keys(doc, "",
                   {"name", "kind", "bounds", "resolution", "obstacles", "start", "goals"});
    } else if (kind == "planar_arm") {
        s.world.kind = WorldKind::PlanarArm;
        check_keys(doc, "", {"name", "kind", "bounds", "resolution", "obstacles", "start",
                             "goals", "link_lengths", "base"});
    } else {
        fail("kind", "must be 'point2d' or 'planar_arm'");
    }

    for (const char* key : {"name", "bounds", "resolution", "start", "goals"}) {
        if (!doc.contains(key)) fail(key, "missing");
    }
    s.name = doc.at("name").get<std::string>();

    const json& bounds = doc.at("bounds");
    check_keys(bounds, "bounds", {"lower", "upper"});
    if (!bounds.contains("lower") || !bounds.contains("upper")) {
        fail("bounds", "needs 'lower' and 'upper'");
    }
    Eigen::VectorXd lower = parse_vector(bounds.at("lower"), "bounds.lower");
    Eigen::VectorXd upper = parse_vector(bounds.at("upper"), "bounds.upper");
    if (lower.size() != upper.size()) fail("bounds", "lower/upper dimension mismatch");
    for (Eigen::Index i = 0; i < lower.size(); ++i) {
        if (!(lower[i] < upper[i])) {
            fail("bounds", "lower[" + std::to_string(i) + "] must be < upper[" +
                               std::to_string(i) + "]");
        }
    }
    s.space = SpaceBounds(std::move(lower), std::move(upper));

    s.resolution = doc.at("resolution").get<double>();
    if (!(s.resolution > 0.0)) fail("resolution", "must be > 0");

    if (doc.contains("obstacles")) {
        const json& obstacles = doc.at("obstacles");
        if (!obstacles.is_array()) fail("obstacles", "expected an array");
        for (std::size_t i = 0; i < obstacles.size(); ++i) {
            s.world.obstacles.push_back(
                parse_obstacle(obstacles[i], "obstacles[" + std::to_string(i) + "]"));
        }
    }

    if (s.world.kind == WorldKind::PlanarArm) {
        if (!doc.contains("link_lengths")) fail("link_lengths", "missing");
        if (!doc.contains("base")) fail("base", "missing");
        Eigen::VectorXd lengths = parse_vector(doc.at("link_lengths"), "link_lengths");
        for (Eigen::Index i = 0; i < lengths.size(); ++i) {
            if (!(lengths[i] > 0.0)) {
                fail("link_lengths[" + std::to_string(i) + "]", "must be > 0");
            }
        }
        s.world.link_lengths.assign(lengths.data(), lengths.data() + lengths.size());
        s.world.base = parse_point(doc.at("base"), "base");
        if (s.space.dimension() != static_cast<int>(s.world.link_lengths.size())) {
            fail("bounds", "dimension must equal the number of links");
        }
    } else if (s.space.dimension() != 2) {
        fail("bounds", "point2d scenarios are 2-dimensional");
    }

    s.start = parse_vector(doc.at("start"), "start");
    if (s.start.size() != s.space.dimension()) fail("start", "dimension mismatch");
    if (!s.space.contains(s.start)) fail("start", "outside the space bounds");
    if (!is_valid(s, s.start)) fail("start", "configuration is in collision");

    const json& goals = doc.at("goals");
    if (!goals.is_array() || goals.empty()) fail("goals", "expected a nonempty array");
    for (std::size_t i = 0; i < goals.size(); ++i) {
        const std::string field = "goals[" + std::to_string(i) + "]";
        Config g = parse_vector(goals[i], field);
        if (g.size() != s.space.dimension()) fail(field, "dimension mismatch");
        if (!s.space.contains(g)) fail(field, "outside the space bounds");
        if (!is_valid(s, g)) fail(field, "configuration is in collision");
        s.goals.push_back(std::move(g));
    }
    return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path.string() + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return load_scenario(buffer.str());
    } catch (const ScenarioError& e) {
        throw ScenarioError(path.string() + ": " + e.what());
    }
}

std::string save_scenario(const Scenario& s) {
    json doc;
    doc["name"] = s.name;
    doc["kind"] = s.world.kind == WorldKind::Point2d ? "point2d" : "planar_arm";
    auto to_array = [](const Eigen::VectorXd& v) {
        return std::vector<double>(v.data(), v.data() + v.size());
    };
    doc["bounds"] = {{"lower", to_array(s.space.lower)}, {"upper", to_array(s.space.upper)}};
    doc["resolution"] = s.resolution;
    doc["obstacles"] = json::array();
    for (const auto& obstacle : s.world.obstacles) {
        json o;
        if (const auto* poly = std::get_if<ConvexPolygon>(&obstacle)) {
            o["type"] = "polygon";
            o["points"] = json::array();
            for (const auto& p : poly->points) {
                o["points"].push_back({p.x(), p.y()});
            }
        } else {
            const auto& c = std::get<Circle>(obstacle);
            o["type"] = "circle";
            o["center"] = {c.center.x(), c.center.y()};
            o["radius"] = c.radius;
        }
        doc["obstacles"].push_back(std::move(o));
    }
    doc["start"] = to_array(s.start);
    doc["goals"] = json::array();
    for (const auto& g : s.goals) doc["goals"].push_back(to_array(g));
    if (s.world.kind == WorldKind::PlanarArm) {
        doc["link_lengths"] = s.world.link_lengths;
        doc["base"] = {s.world.base.x(), s.world.base.y()};
    }
    return doc.dump(2) + "\n";
}

}  // namespace anyplan
