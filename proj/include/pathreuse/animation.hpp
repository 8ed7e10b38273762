#pragma once

#include <span>

#include "pathreuse/transform.hpp"

namespace pathreuse {

/// Linear translation/scale, slerp rotation, clamped outside the keyframe
/// range. Pure function of (keyframes, frame), so placements are bitwise
/// reproducible.
template <typename Keyframe>
RigidTransform transform_at(std::span<const Keyframe> keyframes, int frame) {
    if (keyframes.empty()) return RigidTransform::identity();
    if (frame <= keyframes.front().frame) return keyframes.front().xf;
    if (frame >= keyframes.back().frame) return keyframes.back().xf;
    for (size_t i = 1; i < keyframes.size(); ++i) {
        if (frame <= keyframes[i].frame) {
            const auto& k0 = keyframes[i - 1];
            const auto& k1 = keyframes[i];
            if (frame == k1.frame) return k1.xf;
            const float t = static_cast<float>(frame - k0.frame) /
                            static_cast<float>(k1.frame - k0.frame);
            return interpolate(k0.xf, k1.xf, t);
        }
    }
    return keyframes.back().xf;
}

template <typename Keyframe>
bool has_distinct_transforms(std::span<const Keyframe> keyframes) {
    for (size_t i = 1; i < keyframes.size(); ++i)
        if (!(keyframes[i].xf == keyframes[0].xf)) return true;
    return false;
}

}  // namespace pathreuse
