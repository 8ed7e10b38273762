#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pathreuse/rng.hpp"
#include "pathreuse/transform.hpp"
#include "pathreuse/vec3.hpp"

namespace pathreuse {

enum class LightKind { Point, Spot, DiscArea, RectArea };

struct LightKeyframe {
    int frame = 0;
    RigidTransform xf;
};

/// Emission model per kind:
///   point      uniform over the sphere
///   spot       uniform over the cone solid angle (apex angle = cone_angle_deg)
///   disc/rect  uniform over the surface, cosine-weighted hemisphere
struct Light {
    LightKind kind = LightKind::Point;
    Vec3 flux;                    // radiant flux, RGB watts
    float cone_angle_deg = 60.f;  // spot only, full apex angle in (0, 180)
    float radius = 1.0f;          // disc only
    float half_x = 1.0f;          // rect only
    float half_y = 1.0f;          // rect only
    std::vector<LightKeyframe> keyframes;

    bool is_area() const { return kind == LightKind::DiscArea || kind == LightKind::RectArea; }
    /// Canonical parameter dimensionality: 2 directional axes, plus 2
    /// surface axes for area lights.
    int param_dims() const { return is_area() ? 4 : 2; }
};

struct LightPose {
    Vec3 position;
    Vec3 normal;     // local +z
    Vec3 tangent;    // local +x
    Vec3 bitangent;  // local +y
    float scale = 1.0f;

    bool operator==(const LightPose& o) const {
        return position == o.position && normal == o.normal && tangent == o.tangent &&
               bitangent == o.bitangent && scale == o.scale;
    }
};

LightPose light_pose_at(const Light& light, int frame);

struct EmissionSample {
    Vec3 origin;
    Vec3 dir;
    float pdf = 0.0f;  // unrestricted joint area x solid-angle density
};

/// Axis counts of a distribution map; cells linearize row-major (first axis
/// is the major one). Total cell count must fit the 22-bit PathInfo field.
struct DmLayout {
    std::vector<uint32_t> dims;

    uint32_t total_cells() const {
        uint32_t n = 1;
        for (uint32_t d : dims) n *= d;
        return n;
    }
};

struct DistributionMap {
    DmLayout layout;
    std::vector<uint32_t> counts;

    explicit DistributionMap(DmLayout l = {})
        : layout(std::move(l)), counts(layout.dims.empty() ? 0 : layout.total_cells(), 0u) {}

    uint64_t total() const {
        uint64_t s = 0;
        for (uint32_t c : counts) s += c;
        return s;
    }
};

/// Per-axis canonical interval [lo, hi) of one cell.
struct CellDomain {
    int dims = 0;
    float lo[4] = {0, 0, 0, 0};
    float hi[4] = {0, 0, 0, 0};
};

/// Canonical coordinates of an emission configuration. The directional axes
/// live in the CDF space of the light's emission model, so a uniform draw in
/// a canonical sub-box is exactly the emission distribution restricted to
/// that sub-box.
struct CanonicalCoords {
    int dims = 0;
    float c[4] = {0, 0, 0, 0};
};

/// Maps canonical coordinates to a world-space emission sample.
EmissionSample warp_canonical(const Light& light, const LightPose& pose,
                              const CanonicalCoords& coords);

/// Inverse of warp_canonical; absent when the origin is off-surface or the
/// direction lies outside the emission domain.
std::optional<CanonicalCoords> canonical_of(const Light& light, const LightPose& pose,
                                            const Vec3& origin, const Vec3& dir);

uint32_t cell_of_canonical(const DmLayout& layout, const CanonicalCoords& coords);

std::optional<uint32_t> parametrise(const Light& light, const LightPose& pose,
                                    const DmLayout& layout, const Vec3& origin, const Vec3& dir);

/// Throws std::out_of_range for cell >= total cells. The domains of all cells
/// tile the canonical space exactly.
CellDomain cell_domain(const DmLayout& layout, uint32_t cell);

/// Uniform in the cell's canonical box (with a tiny interior margin so the
/// float-quantized sample parametrises back into the same cell), warped to
/// a surface point and direction. The pdf is the unrestricted emission pdf.
EmissionSample sample_in_cell(const Light& light, const LightPose& pose, const DmLayout& layout,
                              uint32_t cell, uint64_t seed, const RngKey& key,
                              CanonicalCoords* coords_out = nullptr);

/// DM_T: bins n_paths unrestricted emission samples; deterministic given seed.
DistributionMap init_dm_target(const Light& light, const DmLayout& layout, uint32_t n_paths,
                               uint64_t seed);

/// Eq.-style pruning probability: (dm_c - dm_t) / dm_c when overfull, else 0.
inline double prune_probability(uint32_t dm_c, uint32_t dm_t) {
    if (dm_c == 0 || dm_c <= dm_t) return 0.0;
    return static_cast<double>(dm_c - dm_t) / static_cast<double>(dm_c);
}

/// Validates light parameters; throws std::invalid_argument on violations.
void validate_light(const Light& light);

}  // namespace pathreuse
