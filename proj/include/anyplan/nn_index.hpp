#pragma once

#include <cstdint>
#include <vector>

#include "anyplan/space.hpp"

namespace anyplan {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

/// Exact nearest/near queries over an append-only point set. Ties on distance
/// break toward the lowest id, and `near` is inclusive of the radius, so
/// results are bit-identical to a linear scan.
class LinearIndex {
public:
    void insert(VertexId id, const Config& q);
    VertexId nearest(const Config& q) const;
    std::vector<VertexId> near(const Config& q, double radius) const;
    std::size_t size() const { return points_.size(); }

private:
    std::vector<std::pair<VertexId, Config>> points_;
};

/// Incremental k-d tree with the same exactness contract as LinearIndex.
/// Points inserted in random order keep the tree balanced in expectation;
/// queries prune strictly, so boundary-equal points are never lost.
class KdTreeIndex {
public:
    void insert(VertexId id, const Config& q);
    VertexId nearest(const Config& q) const;
    std::vector<VertexId> near(const Config& q, double radius) const;
    std::size_t size() const { return nodes_.size(); }

private:
    struct Node {
        Config point;
        VertexId id;
        int axis;
        std::int32_t left = -1;
        std::int32_t right = -1;
    };
    std::vector<Node> nodes_;

    void nearest_walk(std::int32_t node, const Config& q, double& best_d2,
                      VertexId& best_id) const;
    void near_walk(std::int32_t node, const Config& q, double r2,
                   std::vector<VertexId>& out) const;
};

}  // namespace anyplan
