#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pathreuse/geometry.hpp"

namespace pathreuse {

/// Median-split BVH over the longest axis, leaf size <= 4. Traversal returns
/// the globally nearest hit (checked against brute force in the tests).
class Bvh {
public:
    struct Node {
        Aabb bounds;
        uint32_t left = 0;   // internal: left child index (right = left + 1)
        uint32_t first = 0;  // leaf: first index into the triangle permutation
        uint16_t count = 0;  // leaf: number of triangles, 0 for internal nodes
        uint16_t axis = 0;
    };

    struct TriHit {
        float t;
        uint32_t triangle;  // original triangle index
    };

    Bvh() = default;
    static Bvh build(std::span<const Triangle> triangles);

    std::optional<TriHit> intersect(const Ray& ray) const;

    bool empty() const { return nodes_.empty(); }
    const Aabb& bounds() const { return nodes_.empty() ? empty_bounds_ : nodes_[0].bounds; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<uint32_t>& permutation() const { return order_; }

private:
    uint32_t build_node(uint32_t begin, uint32_t end, const std::vector<Aabb>& tri_bounds,
                        const std::vector<Vec3>& centroids);

    std::vector<Node> nodes_;
    std::vector<uint32_t> order_;     // permutation of triangle indices
    std::vector<Triangle> tris_;      // triangles in permuted order
    Aabb empty_bounds_;
};

/// Linear scan over every triangle; the oracle traversal is checked against.
std::optional<Bvh::TriHit> brute_force_intersect(const Ray& ray,
                                                 std::span<const Triangle> triangles);

}  // namespace pathreuse
