#include "pathreuse/gather.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "pathreuse/parallel.hpp"

namespace pathreuse {

GatherGrid::GatherGrid(std::span<const Vec3> positions, float cell_size)
    : positions_(positions.begin(), positions.end()), cell_size_(cell_size) {
    if (!(cell_size > 0.0f)) throw std::invalid_argument("GatherGrid: cell size must be positive");
    for (uint32_t i = 0; i < positions_.size(); ++i) {
        const Vec3& p = positions_[i];
        cells_[key(coord(p.x), coord(p.y), coord(p.z))].push_back(i);
    }
}

Ray camera_ray(const Camera& cam, uint32_t px, uint32_t py) {
    const Vec3 forward = normalized(cam.look_at - cam.position);
    Vec3 up{0, 1, 0};
    if (std::abs(dot(forward, up)) > 0.999f) up = {1, 0, 0};
    const Vec3 right = normalized(cross(forward, up));
    const Vec3 upv = cross(right, forward);
    const float tan_half = std::tan(cam.fov_deg * static_cast<float>(M_PI) / 360.0f);
    const float aspect = static_cast<float>(cam.width) / static_cast<float>(cam.height);
    const float sx = (2.0f * (px + 0.5f) / cam.width - 1.0f) * tan_half * aspect;
    const float sy = (1.0f - 2.0f * (py + 0.5f) / cam.height) * tan_half;
    return Ray{cam.position, normalized(forward + right * sx + upv * sy)};
}

Image gather_image(const SceneState& state, const PhotonMap& photons,
                   std::span<const PathVertexAux> aux, const Camera& cam, float radius,
                   unsigned workers) {
    if (!(radius > 0.0f)) throw std::invalid_argument("gather: radius must be positive");
    if (aux.size() != photons.records().size())
        throw std::invalid_argument("gather: aux array does not match the photon map");

    std::vector<Vec3> positions;
    std::vector<Vec3> energies;
    std::vector<uint32_t> objects;
    const auto& records = photons.records();
    for (size_t i = 0; i < records.size(); ++i) {
        if (!records[i].live()) continue;
        positions.push_back(aux[i].position);
        energies.push_back(records[i].energy);
        objects.push_back(records[i].object_id);
    }
    const GatherGrid grid(positions, radius);

    const float inv_area = 1.0f / (static_cast<float>(M_PI) * radius * radius);
    const float inv_pi = 1.0f / static_cast<float>(M_PI);
    const Scene& scene = *state.scene;

    Image image(cam.width, cam.height);
    parallel_for(cam.width * cam.height, workers, [&](uint32_t begin, uint32_t end) {
        for (uint32_t pix = begin; pix < end; ++pix) {
            const uint32_t px = pix % cam.width;
            const uint32_t py = pix / cam.width;
            const auto hit = intersect_scene(camera_ray(cam, px, py), state);
            if (!hit) continue;
            const Vec3 albedo = scene.objects[hit->object_id].material.albedo;
            Vec3 radiance;
            grid.for_each_in_radius(hit->position, radius, [&](uint32_t idx) {
                if (objects[idx] != hit->object_id) return;
                radiance += energies[idx];
            });
            image.set(px, py, radiance * albedo * inv_pi * inv_area);
        }
    });
    return image;
}

void write_image(const Image& image, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open image for writing: " + path);
    out << "P6\n" << image.width << " " << image.height << "\n255\n";
    std::vector<unsigned char> row(static_cast<size_t>(image.width) * 3);
    const float inv_gamma = 1.0f / 2.2f;
    size_t i = 0;
    for (uint32_t y = 0; y < image.height; ++y) {
        for (uint32_t x = 0; x < image.width * 3u; ++x) {
            const float v = std::clamp(image.pixels[i++], 0.0f, 1.0f);
            row[x] = static_cast<unsigned char>(std::lround(std::pow(v, inv_gamma) * 255.0f));
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw std::runtime_error("failed writing image: " + path);
}

std::string frame_image_name(int frame) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%04d.ppm", frame);
    return buf;
}

}  // namespace pathreuse
