#include "anyplan/nn_index.hpp"

#include <algorithm>

#include "anyplan/errors.hpp"

namespace anyplan {

void LinearIndex::insert(VertexId id, const Config& q) {
    points_.emplace_back(id, q);
}

VertexId LinearIndex::nearest(const Config& q) const {
    require(!points_.empty(), "nearest: index is empty");
    double best_d2 = kInf;
    VertexId best_id = kNoVertex;
    for (const auto& [id, p] : points_) {
        const double d2 = (p - q).squaredNorm();
        if (d2 < best_d2 || (d2 == best_d2 && id < best_id)) {
            best_d2 = d2;
            best_id = id;
        }
    }
    return best_id;
}

std::vector<VertexId> LinearIndex::near(const Config& q, double radius) const {
    require(radius >= 0.0, "near: radius must be nonnegative");
    const double r2 = radius * radius;
    std::vector<VertexId> out;
    for (const auto& [id, p] : points_) {
        if ((p - q).squaredNorm() <= r2) out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void KdTreeIndex::insert(VertexId id, const Config& q) {
    const int dim = static_cast<int>(q.size());
    if (nodes_.empty()) {
        nodes_.push_back({q, id, 0});
        return;
    }
    std::int32_t cur = 0;
    int depth = 0;
    for (;;) {
        Node& node = nodes_[cur];
        std::int32_t& child = q[node.axis] < node.point[node.axis] ? node.left : node.right;
        if (child < 0) {
            child = static_cast<std::int32_t>(nodes_.size());
            nodes_.push_back({q, id, (depth + 1) % dim});
            return;
        }
        cur = child;
        ++depth;
    }
}

void KdTreeIndex::nearest_walk(std::int32_t node_idx, const Config& q, double& best_d2,
                               VertexId& best_id) const {
    const Node& node = nodes_[node_idx];
    const double d2 = (node.point - q).squaredNorm();
    if (d2 < best_d2 || (d2 == best_d2 && node.id < best_id)) {
        best_d2 = d2;
        best_id = node.id;
    }
    const double diff = q[node.axis] - node.point[node.axis];
    const std::int32_t near_side = diff < 0.0 ? node.left : node.right;
    const std::int32_t far_side = diff < 0.0 ? node.right : node.left;
    if (near_side >= 0) nearest_walk(near_side, q, best_d2, best_id);
    // strict comparison: equal-distance points on the far side may still win a
    // tie on id
    if (far_side >= 0 && diff * diff <= best_d2) {
        nearest_walk(far_side, q, best_d2, best_id);
    }
}

VertexId KdTreeIndex::nearest(const Config& q) const {
    require(!nodes_.empty(), "nearest: index is empty");
    double best_d2 = kInf;
    VertexId best_id = kNoVertex;
    nearest_walk(0, q, best_d2, best_id);
    return best_id;
}

void KdTreeIndex::near_walk(std::int32_t node_idx, const Config& q, double r2,
                            std::vector<VertexId>& out) const {
    const Node& node = nodes_[node_idx];
    if ((node.point - q).squaredNorm() <= r2) out.push_back(node.id);
    const double diff = q[node.axis] - node.point[node.axis];
    if (node.left >= 0 && (diff < 0.0 || diff * diff <= r2)) {
        near_walk(node.left, q, r2, out);
    }
    if (node.right >= 0 && (diff >= 0.0 || diff * diff <= r2)) {
        near_walk(node.right, q, r2, out);
    }
}

std::vector<VertexId> KdTreeIndex::near(const Config& q, double radius) const {
    require(radius >= 0.0, "near: radius must be nonnegative");
    std::vector<VertexId> out;
    if (!nodes_.empty()) near_walk(0, q, radius * radius, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace anyplan
