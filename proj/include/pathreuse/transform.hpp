#pragma once

#include <cmath>

#include "pathreuse/geometry.hpp"
#include "pathreuse/vec3.hpp"

namespace pathreuse {

struct Quat {
    float x = 0.0f, y = 0.0f, z = 0.0f, w = 1.0f;

    bool operator==(const Quat& o) const {
        return x == o.x && y == o.y && z == o.z && w == o.w;
    }

    float norm() const { return std::sqrt(x * x + y * y + z * z + w * w); }

    Quat normalized() const {
        const float n = norm();
        return {x / n, y / n, z / n, w / n};
    }

    static Quat identity() { return {}; }

    static Quat from_axis_angle(const Vec3& axis, float radians) {
        const Vec3 u = pathreuse::normalized(axis);
        const float s = std::sin(radians * 0.5f);
        return {u.x * s, u.y * s, u.z * s, std::cos(radians * 0.5f)};
    }
};

inline Vec3 rotate(const Quat& q, const Vec3& v) {
    const Vec3 u{q.x, q.y, q.z};
    const Vec3 t = cross(u, v) * 2.0f;
    return v + t * q.w + cross(u, t);
}

inline float dot(const Quat& a, const Quat& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z + a.w * b.w;
}

inline Quat slerp(const Quat& a, Quat b, float t) {
    float cos_omega = dot(a, b);
    if (cos_omega < 0.0f) {
        b = {-b.x, -b.y, -b.z, -b.w};
        cos_omega = -cos_omega;
    }
    float ka, kb;
    if (cos_omega > 0.9995f) {
        ka = 1.0f - t;
        kb = t;
    } else {
        const float omega = std::acos(std::min(cos_omega, 1.0f));
        const float inv_sin = 1.0f / std::sin(omega);
        ka = std::sin((1.0f - t) * omega) * inv_sin;
        kb = std::sin(t * omega) * inv_sin;
    }
    Quat r{ka * a.x + kb * b.x, ka * a.y + kb * b.y, ka * a.z + kb * b.z, ka * a.w + kb * b.w};
    return r.normalized();
}

struct RigidTransform {
    Quat rotation;
    Vec3 translation;
    float scale = 1.0f;

    bool operator==(const RigidTransform& o) const {
        return rotation == o.rotation && translation == o.translation && scale == o.scale;
    }

    Vec3 apply_point(const Vec3& p) const { return rotate(rotation, p * scale) + translation; }
    Vec3 apply_dir(const Vec3& d) const { return rotate(rotation, d); }

    static RigidTransform identity() { return {}; }
    static RigidTransform translate(const Vec3& t) { return {Quat::identity(), t, 1.0f}; }
};

inline RigidTransform interpolate(const RigidTransform& a, const RigidTransform& b, float t) {
    RigidTransform r;
    r.rotation = slerp(a.rotation, b.rotation, t);
    r.translation = a.translation + (b.translation - a.translation) * t;
    r.scale = a.scale + (b.scale - a.scale) * t;
    return r;
}

/// Conservative: the result contains the image of all 8 corners.
inline Aabb transform_aabb(const Aabb& box, const RigidTransform& xf) {
    Aabb out;
    for (int i = 0; i < 8; ++i) {
        const Vec3 corner{(i & 1) ? box.hi.x : box.lo.x, (i & 2) ? box.hi.y : box.lo.y,
                          (i & 4) ? box.hi.z : box.lo.z};
        out.expand(xf.apply_point(corner));
    }
    return out;
}

inline Triangle transform_triangle(const Triangle& tri, const RigidTransform& xf) {
    return {xf.apply_point(tri.a), xf.apply_point(tri.b), xf.apply_point(tri.c)};
}

}  // namespace pathreuse
