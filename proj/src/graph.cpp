#include "anyplan/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iomanip>

#include "anyplan/errors.hpp"

namespace anyplan {

double unit_ball_volume(int d) {
    require(d >= 1, "unit_ball_volume: dimension must be >= 1");
    return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double neighborhood_radius(std::size_t n, int d, double gamma, double range) {
    require(n >= 1, "neighborhood_radius: vertex count must be >= 1");
    const double nd = static_cast<double>(n);
    const double r = gamma * std::pow(std::log(std::max(nd, 2.0)) / nd, 1.0 / d);
    return std::min(range, r);
}

double rrt_star_gamma(const SpaceBounds& bounds) {
    const int d = bounds.dimension();
    const double dd = static_cast<double>(d);
    return 2.0 * std::pow(1.0 + 1.0 / dd, 1.0 / dd) *
           std::pow(bounds.measure() / unit_ball_volume(d), 1.0 / dd);
}

PlanGraph::PlanGraph(Config root) : PlanGraph(std::vector<Config>{std::move(root)}) {}

PlanGraph::PlanGraph(std::vector<Config> roots) {
    require(!roots.empty(), "PlanGraph: at least one root required");
    dim_ = static_cast<int>(roots.front().size());
    for (auto& config : roots) {
        require(static_cast<int>(config.size()) == dim_, "PlanGraph: root dimension mismatch");
        const VertexId id = static_cast<VertexId>(vertices_.size());
        Vertex v;
        v.config = std::move(config);
        vertices_.push_back(std::move(v));
        index_.insert(id, vertices_[id].config);
        roots_.push_back(id);
    }
    publish();
}

PlanGraph::PlanGraph(PlanGraph&& other) noexcept
    : vertices_(std::move(other.vertices_)),
      roots_(std::move(other.roots_)),
      goal_ids_(std::move(other.goal_ids_)),
      index_(std::move(other.index_)),
      dim_(other.dim_),
      mutation_hook_(std::move(other.mutation_hook_)) {
    snap_best_.store(other.snap_best_.load(std::memory_order_relaxed),
                     std::memory_order_relaxed);
    snap_count_.store(other.snap_count_.load(std::memory_order_relaxed),
                      std::memory_order_relaxed);
}

PlanGraph& PlanGraph::operator=(PlanGraph&& other) noexcept {
    vertices_ = std::move(other.vertices_);
    roots_ = std::move(other.roots_);
    goal_ids_ = std::move(other.goal_ids_);
    index_ = std::move(other.index_);
    dim_ = other.dim_;
    mutation_hook_ = std::move(other.mutation_hook_);
    snap_best_.store(other.snap_best_.load(std::memory_order_relaxed),
                     std::memory_order_relaxed);
    snap_count_.store(other.snap_count_.load(std::memory_order_relaxed),
                      std::memory_order_relaxed);
    return *this;
}

VertexId PlanGraph::nearest(const Config& q) const { return index_.nearest(q); }

std::vector<VertexId> PlanGraph::near(const Config& q, double radius) const {
    return index_.near(q, radius);
}

std::optional<VertexId> PlanGraph::find_vertex(const Config& q, double tol) const {
    std::vector<VertexId> hits = index_.near(q, tol);
    if (hits.empty()) return std::nullopt;
    return hits.front();
}

VertexId PlanGraph::insert_child(VertexId parent, Config q) {
    require(parent < vertices_.size(), "insert_child: bad parent id");
    const VertexId id = static_cast<VertexId>(vertices_.size());
    const double len = distance(vertices_[parent].config, q);
    Vertex v;
    v.config = std::move(q);
    v.parent = parent;
    v.parent_dist = len;
    v.cost_to_come = vertices_[parent].cost_to_come + len;
    vertices_.push_back(std::move(v));
    vertices_[parent].children.push_back(id);
    add_link(parent, id, len);
    index_.insert(id, vertices_[id].config);
    publish();
    notify();
    return id;
}

std::vector<VertexId> PlanGraph::candidate_set(const Config& q, double radius,
                                               std::span<const VertexId> extra,
                                               VertexId exclude) const {
    std::vector<VertexId> candidates = index_.near(q, radius);
    candidates.push_back(index_.nearest(q));
    candidates.insert(candidates.end(), extra.begin(), extra.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (exclude != kNoVertex) {
        candidates.erase(std::remove(candidates.begin(), candidates.end(), exclude),
                         candidates.end());
    }
    return candidates;
}

std::optional<VertexId> PlanGraph::rewire_insert(const Config& q,
                                                 const MotionPredicate& motion,
                                                 double radius,
                                                 std::span<const VertexId> extra,
                                                 VertexId known_valid) {
    require(static_cast<int>(q.size()) == dim_, "rewire_insert: dimension mismatch");
    const std::vector<VertexId> candidates = candidate_set(q, radius, extra, kNoVertex);

    // Choose the parent in ascending order of prospective cost so the first
    // collision-free candidate is the optimal one.
    struct Ranked {
        double cost;
        double dist;
        VertexId id;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(candidates.size());
    for (VertexId u : candidates) {
        const double d = distance(vertices_[u].config, q);
        ranked.push_back({vertices_[u].cost_to_come + d, d, u});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        return a.cost != b.cost ? a.cost < b.cost : a.id < b.id;
    });

    VertexId parent = kNoVertex;
    double parent_dist = 0.0;
    for (const Ranked& r : ranked) {
        if (r.id == known_valid || motion(vertices_[r.id].config, q)) {
            parent = r.id;
            parent_dist = r.dist;
            break;
        }
    }
    if (parent == kNoVertex) return std::nullopt;

    const VertexId id = static_cast<VertexId>(vertices_.size());
    Vertex v;
    v.config = q;
    v.parent = parent;
    v.parent_dist = parent_dist;
    v.cost_to_come = vertices_[parent].cost_to_come + parent_dist;
    vertices_.push_back(std::move(v));
    vertices_[parent].children.push_back(id);
    add_link(parent, id, parent_dist);
    index_.insert(id, q);

    // The caller's pre-validated edge was examined too; keep it for later
    // relaxations even when it lost the parent contest.
    if (known_valid != kNoVertex && known_valid != parent) {
        add_link(id, known_valid, distance(vertices_[known_valid].config, q));
    }

    rewire_neighbors(id, candidates, motion);
    publish();
    notify();
    return id;
}

void PlanGraph::rewire_neighbors(VertexId vid, std::span<const VertexId> candidates,
                                 const MotionPredicate& motion) {
    const Config& q = vertices_[vid].config;
    for (VertexId u : candidates) {
        if (u == vid || u == vertices_[vid].parent) continue;
        const double d = distance(q, vertices_[u].config);
        if (vertices_[vid].cost_to_come + d >= vertices_[u].cost_to_come) continue;
        if (!has_link(vid, u) && !motion(q, vertices_[u].config)) continue;
        add_link(vid, u, d);
        set_parent(u, vid, d);
        relax_from(u);
    }
}

void PlanGraph::reconnect(VertexId vid, const MotionPredicate& motion, double radius,
                          std::span<const VertexId> extra) {
    const Config& q = vertices_[vid].config;
    std::vector<VertexId> candidates = candidate_set(q, radius, extra, vid);

    struct Ranked {
        double cost;
        double dist;
        VertexId id;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(candidates.size());
    for (VertexId u : candidates) {
        const double d = distance(vertices_[u].config, q);
        ranked.push_back({vertices_[u].cost_to_come + d, d, u});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        return a.cost != b.cost ? a.cost < b.cost : a.id < b.id;
    });
    if (!is_root(vid)) {
        for (const Ranked& r : ranked) {
            if (r.cost >= vertices_[vid].cost_to_come) break;
            if (has_link(vid, r.id) || motion(vertices_[r.id].config, q)) {
                add_link(vid, r.id, r.dist);
                set_parent(vid, r.id, r.dist);
                relax_from(vid);
                break;
            }
        }
    }

    rewire_neighbors(vid, candidates, motion);
    publish();
    notify();
}

std::vector<VertexId> PlanGraph::insert_path(const PathSolution& p,
                                             const MotionPredicate& motion,
                                             const NeighborhoodPolicy& policy) {
    require(roots_.size() == 1, "insert_path: graph must have a single root");
    require(p.configs.size() >= 1, "insert_path: empty path");
    require(distance(p.configs.front(), vertices_[roots_.front()].config) <= 1e-12,
            "insert_path: path must start at the root configuration");

    std::vector<VertexId> anchors;
    anchors.reserve(p.configs.size());
    anchors.push_back(roots_.front());

    for (std::size_t i = 1; i < p.configs.size(); ++i) {
        const Config& q = p.configs[i];
        const VertexId anchor = anchors.back();
        const VertexId extra[1] = {anchor};
        const double radius = policy.radius(size(), dim_);
        if (std::optional<VertexId> existing = find_vertex(q)) {
            reconnect(*existing, motion, radius, extra);
            anchors.push_back(*existing);
            continue;
        }
        // Path edges are motion-valid by precondition; the anchor edge is
        // pre-validated only while the anchor sits exactly on the path.
        const VertexId known_valid =
            vertices_[anchor].config == p.configs[i - 1] ? anchor : kNoVertex;
        std::optional<VertexId> id = rewire_insert(q, motion, radius, extra, known_valid);
        if (!id) {
            throw ContractViolation("insert_path: no collision-free connection for vertex " +
                                    std::to_string(i));
        }
        anchors.push_back(*id);
    }
    return anchors;
}

void PlanGraph::set_parent(VertexId child, VertexId parent, double edge_len) {
    Vertex& c = vertices_[child];
    if (c.parent == parent) {
        c.parent_dist = edge_len;
        c.cost_to_come = vertices_[parent].cost_to_come + edge_len;
        return;
    }
    if (c.parent != kNoVertex) {
        auto& siblings = vertices_[c.parent].children;
        siblings.erase(std::remove(siblings.begin(), siblings.end(), child), siblings.end());
    }
    c.parent = parent;
    c.parent_dist = edge_len;
    c.cost_to_come = vertices_[parent].cost_to_come + edge_len;
    vertices_[parent].children.push_back(child);
}

void PlanGraph::relax_from(VertexId start) {
    // Label-correcting pass over the validated candidate edges: any vertex
    // reachable more cheaply through an updated vertex is re-parented, so
    // costs stay equal to shortest paths over everything ever examined.
    std::deque<VertexId> queue{start};
    while (!queue.empty()) {
        const VertexId x = queue.front();
        queue.pop_front();
        const double cx = vertices_[x].cost_to_come;
        for (const auto& [nbr, len] : vertices_[x].links) {
            const double cand = cx + len;
            if (cand < vertices_[nbr].cost_to_come) {
                set_parent(nbr, x, len);
                queue.push_back(nbr);
            }
        }
    }
}

bool PlanGraph::has_link(VertexId a, VertexId b) const {
    for (const auto& [nbr, len] : vertices_[a].links) {
        if (nbr == b) return true;
    }
    return false;
}

void PlanGraph::add_link(VertexId a, VertexId b, double len) {
    if (has_link(a, b)) return;
    vertices_[a].links.emplace_back(b, len);
    vertices_[b].links.emplace_back(a, len);
}

void PlanGraph::register_goal(VertexId id) {
    require(id < vertices_.size(), "register_goal: bad id");
    if (std::find(goal_ids_.begin(), goal_ids_.end(), id) == goal_ids_.end()) {
        goal_ids_.push_back(id);
    }
    publish();
}

double PlanGraph::best_goal_cost() const {
    double best = kInf;
    for (VertexId id : goal_ids_) best = std::min(best, vertices_[id].cost_to_come);
    return best;
}

std::optional<PathSolution> PlanGraph::best_path(std::span<const VertexId> goals) const {
    VertexId best = kNoVertex;
    double best_cost = kInf;
    for (VertexId id : goals) {
        if (vertices_[id].cost_to_come < best_cost) {
            best_cost = vertices_[id].cost_to_come;
            best = id;
        }
    }
    if (best == kNoVertex) return std::nullopt;
    return path_from_root(best);
}

PathSolution PlanGraph::path_from_root(VertexId id) const {
    require(id < vertices_.size(), "path_from_root: bad id");
    std::vector<Config> configs;
    for (VertexId v = id; v != kNoVertex; v = vertices_[v].parent) {
        configs.push_back(vertices_[v].config);
    }
    std::reverse(configs.begin(), configs.end());
    if (configs.size() == 1) configs.push_back(configs.front());  // degenerate root path
    return PathSolution::from_configs(std::move(configs));
}

GraphSnapshot PlanGraph::snapshot() const {
    GraphSnapshot s;
    s.best_cost = snap_best_.load(std::memory_order_relaxed);
    s.vertex_count = snap_count_.load(std::memory_order_relaxed);
    s.has_solution = std::isfinite(s.best_cost);
    return s;
}

void PlanGraph::publish() {
    snap_count_.store(vertices_.size(), std::memory_order_relaxed);
    snap_best_.store(best_goal_cost(), std::memory_order_relaxed);
}

void PlanGraph::notify() {
    if (mutation_hook_) mutation_hook_(*this);
}

void PlanGraph::dump(std::ostream& out) const {
    out << std::setprecision(17);
    for (std::size_t id = 0; id < vertices_.size(); ++id) {
        const Vertex& v = vertices_[id];
        out << id << ' '
            << (v.parent == kNoVertex ? -1 : static_cast<std::int64_t>(v.parent)) << ' '
            << v.cost_to_come;
        for (Eigen::Index i = 0; i < v.config.size(); ++i) out << ' ' << v.config[i];
        out << '\n';
    }
}

}  // namespace anyplan
