#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pathreuse/photon_store.hpp"
#include "pathreuse/scene.hpp"
#include "pathreuse/vec3.hpp"

namespace pathreuse {

struct Image {
    uint32_t width = 0;
    uint32_t height = 0;
    std::vector<float> pixels;  // RGB rows, top-left origin

    Image() = default;
    Image(uint32_t w, uint32_t h) : width(w), height(h), pixels(size_t{3} * w * h, 0.0f) {}

    Vec3 get(uint32_t x, uint32_t y) const {
        const size_t i = 3 * (size_t{y} * width + x);
        return {pixels[i], pixels[i + 1], pixels[i + 2]};
    }
    void set(uint32_t x, uint32_t y, const Vec3& c) {
        const size_t i = 3 * (size_t{y} * width + x);
        pixels[i] = c.x;
        pixels[i + 1] = c.y;
        pixels[i + 2] = c.z;
    }
};

/// Uniform hash grid over point sites; cell edge = query radius. Neighbor
/// cells are visited in a fixed order and sites in insertion order, so
/// accumulation order is deterministic.
class GatherGrid {
public:
    GatherGrid(std::span<const Vec3> positions, float cell_size);

    /// Calls fn(site_index) for every site within `radius` of `p`
    /// (radius must be <= the construction cell size).
    template <typename Fn>
    void for_each_in_radius(const Vec3& p, float radius, Fn&& fn) const {
        const float r2 = radius * radius;
        const int64_t cx = coord(p.x), cy = coord(p.y), cz = coord(p.z);
        for (int64_t dz = -1; dz <= 1; ++dz)
            for (int64_t dy = -1; dy <= 1; ++dy)
                for (int64_t dx = -1; dx <= 1; ++dx) {
                    const auto it = cells_.find(key(cx + dx, cy + dy, cz + dz));
                    if (it == cells_.end()) continue;
                    for (uint32_t idx : it->second) {
                        const Vec3 d = positions_[idx] - p;
                        if (dot(d, d) <= r2) fn(idx);
                    }
                }
    }

    size_t site_count() const { return positions_.size(); }

private:
    int64_t coord(float v) const { return static_cast<int64_t>(std::floor(v / cell_size_)); }
    static uint64_t key(int64_t x, int64_t y, int64_t z) {
        const uint64_t ux = static_cast<uint64_t>(x) & 0x1FFFFF;
        const uint64_t uy = static_cast<uint64_t>(y) & 0x1FFFFF;
        const uint64_t uz = static_cast<uint64_t>(z) & 0x1FFFFF;
        return (ux << 42) | (uy << 21) | uz;
    }

    std::vector<Vec3> positions_;
    float cell_size_;
    std::unordered_map<uint64_t, std::vector<uint32_t>> cells_;
};

Ray camera_ray(const Camera& cam, uint32_t px, uint32_t py);

/// Fixed-radius density estimate at every camera-visible point:
///   L = sum E_p * albedo / pi / (pi r^2)
/// restricted to photons stored on the hit object.
Image gather_image(const SceneState& state, const PhotonMap& photons,
                   std::span<const PathVertexAux> aux, const Camera& cam, float radius,
                   unsigned workers);

/// Binary PPM (P6), gamma 2.2, values clamped to [0, 1].
void write_image(const Image& image, const std::string& path);

std::string frame_image_name(int frame);  // frame_0007.ppm

}  // namespace pathreuse
