#include "pathreuse/bvh.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pathreuse {

namespace {
constexpr uint32_t kLeafSize = 4;
}

Bvh Bvh::build(std::span<const Triangle> triangles) {
    if (triangles.empty()) throw std::invalid_argument("Bvh::build: empty triangle list");

    Bvh bvh;
    bvh.order_.resize(triangles.size());
    std::iota(bvh.order_.begin(), bvh.order_.end(), 0u);

    std::vector<Aabb> tri_bounds(triangles.size());
    std::vector<Vec3> centroids(triangles.size());
    for (size_t i = 0; i < triangles.size(); ++i) {
        tri_bounds[i] = triangles[i].bounds();
        centroids[i] = triangles[i].centroid();
    }

    bvh.nodes_.reserve(2 * triangles.size());
    bvh.tris_.assign(triangles.begin(), triangles.end());
    bvh.build_node(0, static_cast<uint32_t>(triangles.size()), tri_bounds, centroids);

    // Store triangles in permuted order so leaves read contiguously.
    std::vector<Triangle> permuted(triangles.size());
    for (size_t i = 0; i < bvh.order_.size(); ++i) permuted[i] = triangles[bvh.order_[i]];
    bvh.tris_ = std::move(permuted);
    return bvh;
}

uint32_t Bvh::build_node(uint32_t begin, uint32_t end, const std::vector<Aabb>& tri_bounds,
                         const std::vector<Vec3>& centroids) {
    const uint32_t node_index = static_cast<uint32_t>(nodes_.size());
    nodes_.emplace_back();

    Aabb bounds;
    for (uint32_t i = begin; i < end; ++i) bounds.expand(tri_bounds[order_[i]]);
    nodes_[node_index].bounds = bounds;

    const uint32_t count = end - begin;
    if (count <= kLeafSize) {
        nodes_[node_index].first = begin;
        nodes_[node_index].count = static_cast<uint16_t>(count);
        return node_index;
    }

    Aabb centroid_bounds;
    for (uint32_t i = begin; i < end; ++i) centroid_bounds.expand(centroids[order_[i]]);
    const Vec3 ext = centroid_bounds.extent();
    int axis = 0;
    if (ext.y > ext.x) axis = 1;
    if (ext.z > ext[axis]) axis = 2;

    const uint32_t mid = begin + count / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](uint32_t a, uint32_t b) {
                         if (centroids[a][axis] != centroids[b][axis])
                             return centroids[a][axis] < centroids[b][axis];
                         return a < b;  // deterministic tiebreak
                     });

    nodes_[node_index].axis = static_cast<uint16_t>(axis);
    const uint32_t left = build_node(begin, mid, tri_bounds, centroids);
    const uint32_t right = build_node(mid, end, tri_bounds, centroids);
    (void)right;  // right == left subtree size dependent; stored as left + offset below
    nodes_[node_index].left = left;
    nodes_[node_index].first = right;
    nodes_[node_index].count = 0;
    return node_index;
}

std::optional<Bvh::TriHit> Bvh::intersect(const Ray& ray) const {
    if (nodes_.empty()) return std::nullopt;

    std::optional<TriHit> best;
    Ray r = ray;

    uint32_t stack[64];
    int sp = 0;
    stack[sp++] = 0;
    while (sp > 0) {
        const Node& node = nodes_[stack[--sp]];
        if (!ray_intersects_aabb(r, node.bounds)) continue;
        if (node.count > 0) {
            for (uint32_t i = node.first; i < node.first + node.count; ++i) {
                if (auto t = intersect_triangle(r, tris_[i])) {
                    if (!best || *t < best->t) {
                        best = TriHit{*t, order_[i]};
                        r.t_max = *t;
                    }
                }
            }
        } else {
            stack[sp++] = node.first;  // right child
            stack[sp++] = node.left;
        }
    }
    return best;
}

std::optional<Bvh::TriHit> brute_force_intersect(const Ray& ray,
                                                 std::span<const Triangle> triangles) {
    std::optional<Bvh::TriHit> best;
    for (uint32_t i = 0; i < triangles.size(); ++i) {
        Ray r = ray;
        if (best) r.t_max = best->t;
        if (auto t = intersect_triangle(r, triangles[i])) best = Bvh::TriHit{*t, i};
    }
    return best;
}

}  // namespace pathreuse
