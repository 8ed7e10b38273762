#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "pathreuse/vec3.hpp"

namespace pathreuse {

inline constexpr uint32_t kInvalidObjectId = 0xFFFFFFFFu;

struct Ray {
    Vec3 origin;
    Vec3 dir;  // unit length
    float t_min = 0.0f;
    float t_max = std::numeric_limits<float>::max();
};

struct Aabb {
    Vec3 lo{std::numeric_limits<float>::max(), std::numeric_limits<float>::max(),
            std::numeric_limits<float>::max()};
    Vec3 hi{std::numeric_limits<float>::lowest(), std::numeric_limits<float>::lowest(),
            std::numeric_limits<float>::lowest()};

    bool valid() const { return lo.x <= hi.x && lo.y <= hi.y && lo.z <= hi.z; }

    void expand(const Vec3& p) {
        lo = min(lo, p);
        hi = max(hi, p);
    }
    void expand(const Aabb& b) {
        lo = min(lo, b.lo);
        hi = max(hi, b.hi);
    }
    void inflate(float amount) {
        lo = lo - Vec3(amount);
        hi = hi + Vec3(amount);
    }

    Vec3 center() const { return (lo + hi) * 0.5f; }
    Vec3 extent() const { return hi - lo; }
    float diagonal() const { return length(hi - lo); }

    bool contains(const Vec3& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z &&
               p.z <= hi.z;
    }
    bool contains(const Aabb& b) const {
        return b.lo.x >= lo.x && b.lo.y >= lo.y && b.lo.z >= lo.z && b.hi.x <= hi.x &&
               b.hi.y <= hi.y && b.hi.z <= hi.z;
    }

    static Aabb united(const Aabb& a, const Aabb& b) {
        Aabb r = a;
        r.expand(b);
        return r;
    }
};

struct Triangle {
    Vec3 a, b, c;

    Vec3 geometric_normal() const { return normalized(cross(b - a, c - a)); }
    Aabb bounds() const {
        Aabb box;
        box.expand(a);
        box.expand(b);
        box.expand(c);
        return box;
    }
    Vec3 centroid() const { return (a + b + c) / 3.0f; }
    float area() const { return 0.5f * length(cross(b - a, c - a)); }
};

struct Hit {
    float t = 0.0f;
    uint32_t object_id = kInvalidObjectId;
    Vec3 position;
    Vec3 normal;  // unit, flipped toward the ray origin
    uint32_t triangle = 0;
};

/// Moeller-Trumbore with inclusive edges; double hits on shared edges are fine
/// because callers keep the nearest t.
inline std::optional<float> intersect_triangle(const Ray& ray, const Triangle& tri) {
    constexpr float kEdgeEps = 1e-7f;
    const Vec3 e1 = tri.b - tri.a;
    const Vec3 e2 = tri.c - tri.a;
    const Vec3 pvec = cross(ray.dir, e2);
    const float det = dot(e1, pvec);
    if (std::fabs(det) < 1e-12f) return std::nullopt;
    const float inv_det = 1.0f / det;
    const Vec3 tvec = ray.origin - tri.a;
    const float u = dot(tvec, pvec) * inv_det;
    if (u < -kEdgeEps || u > 1.0f + kEdgeEps) return std::nullopt;
    const Vec3 qvec = cross(tvec, e1);
    const float v = dot(ray.dir, qvec) * inv_det;
    if (v < -kEdgeEps || u + v > 1.0f + kEdgeEps) return std::nullopt;
    const float t = dot(e2, qvec) * inv_det;
    if (t <= ray.t_min || t >= ray.t_max) return std::nullopt;
    return t;
}

/// Slab test of the closed segment [a,b] against a closed box. Endpoints are
/// canonicalized so the result is exactly symmetric in (a,b).
inline bool segment_intersects_aabb(Vec3 a, Vec3 b, const Aabb& box) {
    auto lex_less = [](const Vec3& p, const Vec3& q) {
        if (p.x != q.x) return p.x < q.x;
        if (p.y != q.y) return p.y < q.y;
        return p.z < q.z;
    };
    if (lex_less(b, a)) std::swap(a, b);

    double t0 = 0.0;
    double t1 = 1.0;
    for (int axis = 0; axis < 3; ++axis) {
        const double o = a[axis];
        const double d = static_cast<double>(b[axis]) - o;
        const double lo = box.lo[axis];
        const double hi = box.hi[axis];
        if (d == 0.0) {
            if (o < lo || o > hi) return false;
            continue;
        }
        double tn = (lo - o) / d;
        double tf = (hi - o) / d;
        if (tn > tf) std::swap(tn, tf);
        t0 = std::max(t0, tn);
        t1 = std::min(t1, tf);
        if (t0 > t1) return false;
    }
    return true;
}

inline bool ray_intersects_aabb(const Ray& ray, const Aabb& box) {
    double t0 = ray.t_min;
    double t1 = ray.t_max;
    for (int axis = 0; axis < 3; ++axis) {
        const double o = ray.origin[axis];
        const double d = ray.dir[axis];
        if (d == 0.0) {
            if (o < box.lo[axis] || o > box.hi[axis]) return false;
            continue;
        }
        double tn = (box.lo[axis] - o) / d;
        double tf = (box.hi[axis] - o) / d;
        if (tn > tf) std::swap(tn, tf);
        t0 = std::max(t0, tn);
        t1 = std::min(t1, tf);
        if (t0 > t1) return false;
    }
    return true;
}

}  // namespace pathreuse
