#pragma once

// Shared helpers for the test suites: inline scenario builders, independent
// oracles and random-path generators. Everything here is test-only and stays
// independent of the library's query implementations.

#include <algorithm>
#include <map>
#include <queue>
#include <vector>

#include "anyplan/graph.hpp"
#include "anyplan/random.hpp"
#include "anyplan/scenario.hpp"
#include "anyplan/space.hpp"

namespace testsupport {

using namespace anyplan;

inline Scenario empty_world_2d(double lo = 0.0, double hi = 10.0, double resolution = 0.05) {
    Scenario s;
    s.name = "inline-empty2d";
    s.space = SpaceBounds(make_config({lo, lo}), make_config({hi, hi}));
    s.world.kind = WorldKind::Point2d;
    s.resolution = resolution;
    s.start = make_config({lo + 0.5, lo + 0.5});
    s.goals = {make_config({hi - 0.5, hi - 0.5})};
    return s;
}

inline ConvexPolygon rect(double x0, double y0, double x1, double y1) {
    return ConvexPolygon{{Vec2(x0, y0), Vec2(x1, y0), Vec2(x1, y1), Vec2(x0, y1)}};
}

inline Scenario load_suite_scenario(const std::string& filename) {
    return load_scenario_file(std::string(SCENARIO_DIR) + "/" + filename);
}

// --- independent oracles -------------------------------------------------

/// Winding-number point-in-polygon test (general polygons), taken as an
/// independent oracle for the convex containment predicate. Points on the
/// boundary count as inside, matching the closed-obstacle convention.
inline bool winding_number_contains(const ConvexPolygon& poly, const Vec2& p,
                                    double eps = 1e-12) {
    const auto& pts = poly.points;
    int winding = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec2& a = pts[i];
        const Vec2& b = pts[(i + 1) % pts.size()];
        const double cross = (b.x() - a.x()) * (p.y() - a.y()) -
                             (p.x() - a.x()) * (b.y() - a.y());
        // boundary: p collinear with and between a,b
        if (std::abs(cross) <= eps &&
            p.x() >= std::min(a.x(), b.x()) - eps && p.x() <= std::max(a.x(), b.x()) + eps &&
            p.y() >= std::min(a.y(), b.y()) - eps && p.y() <= std::max(a.y(), b.y()) + eps) {
            return true;
        }
        if (a.y() <= p.y()) {
            if (b.y() > p.y() && cross > 0) ++winding;
        } else {
            if (b.y() <= p.y() && cross < 0) --winding;
        }
    }
    return winding != 0;
}

/// Brute-force nearest: minimal (squared distance, id).
inline VertexId linear_nearest(const std::vector<std::pair<VertexId, Config>>& points,
                               const Config& q) {
    VertexId best = kNoVertex;
    double best_d2 = kInf;
    for (const auto& [id, p] : points) {
        const double d2 = (p - q).squaredNorm();
        if (d2 < best_d2 || (d2 == best_d2 && id < best)) {
            best_d2 = d2;
            best = id;
        }
    }
    return best;
}

inline std::vector<VertexId> linear_near(
    const std::vector<std::pair<VertexId, Config>>& points, const Config& q, double r) {
    std::vector<VertexId> out;
    for (const auto& [id, p] : points) {
        if ((p - q).squaredNorm() <= r * r) out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Dijkstra over an explicit undirected edge list from the given sources.
inline std::vector<double> dijkstra(std::size_t n,
                                    const std::vector<std::tuple<VertexId, VertexId, double>>& edges,
                                    const std::vector<VertexId>& sources) {
    std::vector<std::vector<std::pair<VertexId, double>>> adj(n);
    for (const auto& [a, b, w] : edges) {
        adj[a].emplace_back(b, w);
        adj[b].emplace_back(a, w);
    }
    std::vector<double> dist(n, kInf);
    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (VertexId s : sources) {
        dist[s] = 0.0;
        heap.push({0.0, s});
    }
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        for (const auto& [u, w] : adj[v]) {
            if (d + w < dist[u]) {
                dist[u] = d + w;
                heap.push({d + w, u});
            }
        }
    }
    return dist;
}

/// Dijkstra over the graph's validated candidate-edge log.
inline std::vector<double> dijkstra_over_links(const PlanGraph& g) {
    std::vector<std::tuple<VertexId, VertexId, double>> edges;
    for (std::size_t id = 0; id < g.size(); ++id) {
        for (const auto& [nbr, len] : g.vertex(static_cast<VertexId>(id)).links) {
            if (nbr > id) edges.emplace_back(static_cast<VertexId>(id), nbr, len);
        }
    }
    std::vector<VertexId> sources(g.roots().begin(), g.roots().end());
    return dijkstra(g.size(), edges, sources);
}

/// Structural tree/cost invariants: parent walks reach a root without cycles,
/// parent/child links agree, and costs are consistent within tol.
inline bool graph_invariants_hold(const PlanGraph& g, double tol = 1e-9) {
    const std::size_t n = g.size();
    for (std::size_t id = 0; id < n; ++id) {
        const Vertex& v = g.vertex(static_cast<VertexId>(id));
        if (v.parent == kNoVertex) {
            if (v.cost_to_come != 0.0) return false;
            continue;
        }
        const Vertex& p = g.vertex(v.parent);
        if (std::abs(v.cost_to_come -
                     (p.cost_to_come + distance(p.config, v.config))) > tol) {
            return false;
        }
        if (std::find(p.children.begin(), p.children.end(), static_cast<VertexId>(id)) ==
            p.children.end()) {
            return false;
        }
        // cycle check: walk to a root in at most n steps
        std::size_t steps = 0;
        VertexId cur = static_cast<VertexId>(id);
        while (g.vertex(cur).parent != kNoVertex) {
            cur = g.vertex(cur).parent;
            if (++steps > n) return false;
        }
    }
    for (std::size_t id = 0; id < n; ++id) {
        const Vertex& v = g.vertex(static_cast<VertexId>(id));
        for (VertexId c : v.children) {
            if (g.vertex(c).parent != static_cast<VertexId>(id)) return false;
        }
    }
    return true;
}

// --- random inputs --------------------------------------------------------

inline Config random_config(const SpaceBounds& bounds, RandomStream& rng) {
    return sample_uniform(bounds, rng);
}

/// Random motion-valid path through a scenario, built by steering a random
/// walk from a given origin (vertices are waypoints of accepted steps).
inline std::vector<Config> random_valid_walk(const Scenario& s, const Config& origin,
                                             RandomStream& rng, int target_vertices,
                                             double step) {
    std::vector<Config> configs{origin};
    int guard = 0;
    while (static_cast<int>(configs.size()) < target_vertices && guard++ < 400) {
        const Config target = sample_uniform(s.space, rng);
        const Config& cur = configs.back();
        const double d = distance(cur, target);
        if (d < 1e-9) continue;
        const Config next = interpolate(cur, target, std::min(1.0, step / d));
        if (motion_valid(s, cur, next)) configs.push_back(next);
    }
    return configs;
}

}  // namespace testsupport
