#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "anyplan/nn_index.hpp"
#include "anyplan/space.hpp"

namespace anyplan {

/// Edge-validity predicate threaded through graph mutations (collision
/// checking lives in the scenario layer; tests may pass stubs).
using MotionPredicate = std::function<bool(const Config&, const Config&)>;

double unit_ball_volume(int d);

/// min(range, gamma * (ln(max(n,2)) / n)^(1/d))
double neighborhood_radius(std::size_t n, int d, double gamma, double range);

/// Conservative rewiring constant computed from the full bounding box, an
/// upper bound on the free-space measure:
/// 2 * (1 + 1/d)^(1/d) * (measure / unit_ball_volume(d))^(1/d)
double rrt_star_gamma(const SpaceBounds& bounds);

struct NeighborhoodPolicy {
    double gamma = 1.0;
    double range = kInf;

    double radius(std::size_t n, int d) const {
        return neighborhood_radius(n, d, gamma, range);
    }
};

struct Vertex {
    Config config;
    VertexId parent = kNoVertex;
    double parent_dist = 0.0;
    double cost_to_come = 0.0;
    std::vector<VertexId> children;
    /// Collision-checked candidate edges (id, length), both directions stored.
    /// Costs are kept shortest-path consistent over these, so the tree always
    /// matches a Dijkstra oracle restricted to the examined edges.
    std::vector<std::pair<VertexId, double>> links;
};

/// Lock-free progress snapshot; may be polled from other threads while the
/// single writer mutates the graph.
struct GraphSnapshot {
    double best_cost = kInf;
    std::uint64_t vertex_count = 0;
    bool has_solution = false;
};

/// Planner tree over configuration space: vertices carry parent links and
/// cost-to-come, an exact nearest-neighbor index answers nearest/near, and
/// mutations go through RRT*-style rewiring. A goal forest is modeled as one
/// graph with several zero-cost roots.
class PlanGraph {
public:
    explicit PlanGraph(Config root);
    explicit PlanGraph(std::vector<Config> roots);

    // movable (snapshot atomics are copied; do not move while polled)
    PlanGraph(PlanGraph&& other) noexcept;
    PlanGraph& operator=(PlanGraph&& other) noexcept;
    PlanGraph(const PlanGraph&) = delete;
    PlanGraph& operator=(const PlanGraph&) = delete;

    std::size_t size() const { return vertices_.size(); }
    int dimension() const { return dim_; }
    const Vertex& vertex(VertexId id) const { return vertices_[id]; }
    std::span<const VertexId> roots() const { return roots_; }
    bool is_root(VertexId id) const { return vertices_[id].parent == kNoVertex; }

    VertexId nearest(const Config& q) const;
    std::vector<VertexId> near(const Config& q, double radius) const;

    /// Lowest-id vertex whose config lies within tol of q, if any.
    std::optional<VertexId> find_vertex(const Config& q, double tol = 1e-12) const;

    /// Plain RRT insertion: attach q under parent with no rewiring.
    VertexId insert_child(VertexId parent, Config q);

    /// RRT* insertion. The parent is the cost-minimizing collision-free
    /// candidate among {nearest} ∪ near(q, radius) ∪ extra; afterwards every
    /// candidate reachable more cheaply through q is re-parented to it and
    /// cost decreases are propagated to a fixpoint over all validated edges.
    /// `known_valid` marks a candidate whose edge to q the caller has already
    /// collision-checked. Returns the new id, or nullopt when no candidate
    /// edge is collision-free (nothing is inserted).
    std::optional<VertexId> rewire_insert(const Config& q, const MotionPredicate& motion,
                                          double radius,
                                          std::span<const VertexId> extra = {},
                                          VertexId known_valid = kNoVertex);

    /// Insert a start-rooted path whose edges are motion-valid. Each path
    /// vertex after the first is processed in order via rewire_insert with
    /// its candidate set augmented by the previously processed path vertex;
    /// a vertex whose config already exists in the graph is reused (and
    /// reconnected through the same candidate machinery) instead of
    /// duplicated. Returns the anchor id of every path vertex.
    std::vector<VertexId> insert_path(const PathSolution& p, const MotionPredicate& motion,
                                      const NeighborhoodPolicy& policy);

    void register_goal(VertexId id);
    std::span<const VertexId> goal_vertices() const { return goal_ids_; }
    double best_goal_cost() const;

    /// Min-cost root-to-goal path over the given goal vertices (or the
    /// registered ones), reconstructed through parent links.
    std::optional<PathSolution> best_path(std::span<const VertexId> goals) const;
    std::optional<PathSolution> best_path() const { return best_path(goal_ids_); }
    PathSolution path_from_root(VertexId id) const;

    GraphSnapshot snapshot() const;

    /// Edge-list dump, one line per vertex: `id parent_id cost x0 x1 ...`
    /// (parent_id -1 for roots).
    void dump(std::ostream& out) const;

    /// Invoked after every completed mutation (insertion, reconnection or
    /// path-vertex step); used by invariant-checking tests.
    void set_mutation_hook(std::function<void(const PlanGraph&)> hook) {
        mutation_hook_ = std::move(hook);
    }

private:
    std::vector<VertexId> candidate_set(const Config& q, double radius,
                                        std::span<const VertexId> extra,
                                        VertexId exclude) const;
    void rewire_neighbors(VertexId vid, std::span<const VertexId> candidates,
                          const MotionPredicate& motion);
    void reconnect(VertexId vid, const MotionPredicate& motion, double radius,
                   std::span<const VertexId> extra);
    void set_parent(VertexId child, VertexId parent, double edge_len);
    void relax_from(VertexId start);
    bool has_link(VertexId a, VertexId b) const;
    void add_link(VertexId a, VertexId b, double len);
    void publish();
    void notify();

    std::vector<Vertex> vertices_;
    std::vector<VertexId> roots_;
    std::vector<VertexId> goal_ids_;
    KdTreeIndex index_;
    int dim_ = 0;
    std::function<void(const PlanGraph&)> mutation_hook_;

    std::atomic<double> snap_best_{kInf};
    std::atomic<std::uint64_t> snap_count_{0};
};

}  // namespace anyplan
