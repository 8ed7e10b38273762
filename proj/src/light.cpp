#include "pathreuse/light.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pathreuse/animation.hpp"

namespace pathreuse {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Absolute interior margin (in canonical units) used by sample_in_cell so
// that float quantization of the warped sample cannot push the inverse
// across a cell boundary.
constexpr double kCellMargin = 2e-5;
// Relative on-surface tolerance for area lights.
constexpr double kSurfaceTol = 1e-4;

double cos_cone_half(const Light& light) {
    return std::cos(static_cast<double>(light.cone_angle_deg) * std::numbers::pi / 360.0);
}

double light_surface_area(const Light& light, const LightPose& pose) {
    switch (light.kind) {
        case LightKind::DiscArea: {
            const double r = static_cast<double>(light.radius) * pose.scale;
            return std::numbers::pi * r * r;
        }
        case LightKind::RectArea: {
            const double hx = static_cast<double>(light.half_x) * pose.scale;
            const double hy = static_cast<double>(light.half_y) * pose.scale;
            return 4.0 * hx * hy;
        }
        default:
            return 0.0;
    }
}

Vec3 dir_from_angles(const LightPose& pose, double cos_theta, double phi) {
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    const double cx = std::cos(phi) * sin_theta;
    const double cy = std::sin(phi) * sin_theta;
    return normalized(pose.tangent * static_cast<float>(cx) +
                      pose.bitangent * static_cast<float>(cy) +
                      pose.normal * static_cast<float>(cos_theta));
}

double wrap_unit(double v) {
    v -= std::floor(v);
    if (v >= 1.0) v = 0.0;
    return v;
}

}  // namespace

LightPose light_pose_at(const Light& light, int frame) {
    const RigidTransform xf =
        transform_at(std::span<const LightKeyframe>(light.keyframes), frame);
    LightPose pose;
    pose.position = xf.translation;
    pose.normal = rotate(xf.rotation, Vec3{0, 0, 1});
    pose.tangent = rotate(xf.rotation, Vec3{1, 0, 0});
    pose.bitangent = rotate(xf.rotation, Vec3{0, 1, 0});
    pose.scale = xf.scale;
    return pose;
}

EmissionSample warp_canonical(const Light& light, const LightPose& pose,
                              const CanonicalCoords& coords) {
    EmissionSample s;
    switch (light.kind) {
        case LightKind::Point: {
            const double cos_theta = 1.0 - 2.0 * coords.c[0];
            const double phi = kTwoPi * coords.c[1];
            s.origin = pose.position;
            s.dir = dir_from_angles(pose, cos_theta, phi);
            s.pdf = static_cast<float>(1.0 / (4.0 * std::numbers::pi));
            break;
        }
        case LightKind::Spot: {
            const double ch = cos_cone_half(light);
            const double cos_theta = 1.0 - static_cast<double>(coords.c[0]) * (1.0 - ch);
            const double phi = kTwoPi * coords.c[1];
            s.origin = pose.position;
            s.dir = dir_from_angles(pose, cos_theta, phi);
            s.pdf = static_cast<float>(1.0 / (kTwoPi * (1.0 - ch)));
            break;
        }
        case LightKind::DiscArea: {
            const double r_max = static_cast<double>(light.radius) * pose.scale;
            const double r = r_max * std::sqrt(static_cast<double>(coords.c[0]));
            const double phi_s = kTwoPi * coords.c[1];
            s.origin = pose.position +
                       pose.tangent * static_cast<float>(r * std::cos(phi_s)) +
                       pose.bitangent * static_cast<float>(r * std::sin(phi_s));
            const double cos_theta = std::sqrt(std::max(0.0, 1.0 - coords.c[2]));
            s.dir = dir_from_angles(pose, cos_theta, kTwoPi * coords.c[3]);
            s.pdf = static_cast<float>(cos_theta / std::numbers::pi /
                                       light_surface_area(light, pose));
            break;
        }
        case LightKind::RectArea: {
            const float hx = light.half_x * pose.scale;
            const float hy = light.half_y * pose.scale;
            s.origin = pose.position + pose.tangent * ((2.0f * coords.c[0] - 1.0f) * hx) +
                       pose.bitangent * ((2.0f * coords.c[1] - 1.0f) * hy);
            const double cos_theta = std::sqrt(std::max(0.0, 1.0 - coords.c[2]));
            s.dir = dir_from_angles(pose, cos_theta, kTwoPi * coords.c[3]);
            s.pdf = static_cast<float>(cos_theta / std::numbers::pi /
                                       light_surface_area(light, pose));
            break;
        }
    }
    return s;
}

std::optional<CanonicalCoords> canonical_of(const Light& light, const LightPose& pose,
                                            const Vec3& origin, const Vec3& dir) {
    CanonicalCoords out;
    out.dims = light.param_dims();

    const double dn = dot(dir, pose.normal);
    const double dt = dot(dir, pose.tangent);
    const double db = dot(dir, pose.bitangent);
    const double phi = wrap_unit(std::atan2(db, dt) / kTwoPi);

    switch (light.kind) {
        case LightKind::Point: {
            out.c[0] = static_cast<float>(std::clamp((1.0 - dn) / 2.0, 0.0, 1.0));
            out.c[1] = static_cast<float>(phi);
            break;
        }
        case LightKind::Spot: {
            const double ch = cos_cone_half(light);
            const double q = (1.0 - dn) / (1.0 - ch);
            if (q < 0.0 || q > 1.0) return std::nullopt;
            out.c[0] = static_cast<float>(std::min(q, 1.0));
            out.c[1] = static_cast<float>(phi);
            break;
        }
        case LightKind::DiscArea:
        case LightKind::RectArea: {
            const Vec3 rel = origin - pose.position;
            const double lz = dot(rel, pose.normal);
            const double lx = dot(rel, pose.tangent);
            const double ly = dot(rel, pose.bitangent);
            if (light.kind == LightKind::DiscArea) {
                const double r_max = static_cast<double>(light.radius) * pose.scale;
                if (std::fabs(lz) > kSurfaceTol * r_max) return std::nullopt;
                const double q = (lx * lx + ly * ly) / (r_max * r_max);
                if (q > 1.0 + kSurfaceTol) return std::nullopt;
                out.c[0] = static_cast<float>(std::min(q, 1.0));
                out.c[1] = static_cast<float>(wrap_unit(std::atan2(ly, lx) / kTwoPi));
            } else {
                const double hx = static_cast<double>(light.half_x) * pose.scale;
                const double hy = static_cast<double>(light.half_y) * pose.scale;
                if (std::fabs(lz) > kSurfaceTol * std::max(hx, hy)) return std::nullopt;
                const double u = (lx / hx + 1.0) / 2.0;
                const double v = (ly / hy + 1.0) / 2.0;
                if (u < -kSurfaceTol || u > 1.0 + kSurfaceTol || v < -kSurfaceTol ||
                    v > 1.0 + kSurfaceTol)
                    return std::nullopt;
                out.c[0] = static_cast<float>(std::clamp(u, 0.0, 1.0));
                out.c[1] = static_cast<float>(std::clamp(v, 0.0, 1.0));
            }
            if (dn <= 0.0) return std::nullopt;  // must leave the emitting side
            out.c[2] = static_cast<float>(std::clamp(1.0 - dn * dn, 0.0, 1.0));
            out.c[3] = static_cast<float>(phi);
            break;
        }
    }
    return out;
}

uint32_t cell_of_canonical(const DmLayout& layout, const CanonicalCoords& coords) {
    uint32_t cell = 0;
    for (size_t axis = 0; axis < layout.dims.size(); ++axis) {
        const uint32_t dim = layout.dims[axis];
        uint32_t idx = static_cast<uint32_t>(coords.c[axis] * static_cast<float>(dim));
        if (idx >= dim) idx = dim - 1;  // c == 1.0 lands in the last cell
        cell = cell * dim + idx;
    }
    return cell;
}

std::optional<uint32_t> parametrise(const Light& light, const LightPose& pose,
                                    const DmLayout& layout, const Vec3& origin,
                                    const Vec3& dir) {
    const auto coords = canonical_of(light, pose, origin, dir);
    if (!coords) return std::nullopt;
    return cell_of_canonical(layout, *coords);
}

CellDomain cell_domain(const DmLayout& layout, uint32_t cell) {
    if (cell >= layout.total_cells()) throw std::out_of_range("cell_domain: cell out of range");
    CellDomain dom;
    dom.dims = static_cast<int>(layout.dims.size());
    uint32_t rest = cell;
    for (int axis = dom.dims - 1; axis >= 0; --axis) {
        const uint32_t dim = layout.dims[axis];
        const uint32_t idx = rest % dim;
        rest /= dim;
        dom.lo[axis] = static_cast<float>(idx) / static_cast<float>(dim);
        dom.hi[axis] = static_cast<float>(idx + 1) / static_cast<float>(dim);
    }
    return dom;
}

EmissionSample sample_in_cell(const Light& light, const LightPose& pose, const DmLayout& layout,
                              uint32_t cell, uint64_t seed, const RngKey& key,
                              CanonicalCoords* coords_out) {
    const CellDomain dom = cell_domain(layout, cell);
    CanonicalCoords coords;
    coords.dims = dom.dims;
    for (int axis = 0; axis < dom.dims; ++axis) {
        RngKey lane_key = key;
        lane_key.lane = key.lane * 4 + static_cast<uint32_t>(axis);
        const double u = rng_uniform_d(seed, lane_key);
        const double width = static_cast<double>(dom.hi[axis]) - dom.lo[axis];
        const double margin = std::min(0.4, kCellMargin / width);
        const double t = margin + u * (1.0 - 2.0 * margin);
        coords.c[axis] = static_cast<float>(dom.lo[axis] + t * width);
    }
    if (coords_out) *coords_out = coords;
    return warp_canonical(light, pose, coords);
}

DistributionMap init_dm_target(const Light& light, const DmLayout& layout, uint32_t n_paths,
                               uint64_t seed) {
    if (n_paths == 0) throw std::invalid_argument("init_dm_target: n_paths must be positive");
    for (uint32_t d : layout.dims)
        if (d == 0) throw std::invalid_argument("init_dm_target: zero-sized DM axis");
    if (layout.total_cells() > (1u << 22))
        throw std::invalid_argument("init_dm_target: more than 2^22 DM cells");

    DistributionMap dm(layout);
    const int dims = light.param_dims();
    for (uint32_t i = 0; i < n_paths; ++i) {
        CanonicalCoords coords;
        coords.dims = dims;
        for (int axis = 0; axis < dims; ++axis) {
            const RngKey key{i, 0, 0, RngPurpose::DmTargetInit, static_cast<uint32_t>(axis)};
            coords.c[axis] = static_cast<float>(rng_uniform_d(seed, key));
        }
        // Canonical axes are emission-CDF space, so binning uniform canonical
        // draws is the same as binning unrestricted emission samples.
        dm.counts[cell_of_canonical(layout, coords)]++;
    }
    return dm;
}

void validate_light(const Light& light) {
    if (light.flux.x < 0 || light.flux.y < 0 || light.flux.z < 0)
        throw std::invalid_argument("light: flux must be non-negative");
    if (light.kind == LightKind::Spot &&
        (light.cone_angle_deg <= 0.0f || light.cone_angle_deg >= 180.0f))
        throw std::invalid_argument("light: spot cone angle must be in (0, 180)");
    if (light.kind == LightKind::DiscArea && light.radius <= 0.0f)
        throw std::invalid_argument("light: disc radius must be positive");
    if (light.kind == LightKind::RectArea && (light.half_x <= 0.0f || light.half_y <= 0.0f))
        throw std::invalid_argument("light: rect half extents must be positive");
    for (const auto& kf : light.keyframes) {
        if (std::fabs(kf.xf.rotation.norm() - 1.0f) > 1e-5f)
            throw std::invalid_argument("light: keyframe rotation is not a unit quaternion");
        if (kf.xf.scale <= 0.0f) throw std::invalid_argument("light: keyframe scale must be > 0");
    }
}

}  // namespace pathreuse
