#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pathreuse/geometry.hpp"
#include "pathreuse/vec3.hpp"

namespace pathreuse {

/// 32-byte stored path vertex.
struct Photon {
    Vec3 incoming_dir;                     // unit vector toward the vertex
    uint32_t object_id = kInvalidObjectId;  // 0xFFFFFFFF marks an empty record
    Vec3 energy;                           // RGB watts
    float radius = 0.0f;                   // gather radius, world units

    bool live() const { return object_id != kInvalidObjectId; }
};
static_assert(sizeof(Photon) == 32, "photon record must serialize to 32 bytes");

/// Packed per-path status word:
///   bits 0-21  DM cell id
///   bits 22-25 segment count, stored as count - 1 (1..16)
///   bits 26-29 retrace-start segment
///   bit 30     replace-path flag
///   bit 31     reuse-light flag
struct PathInfoFields {
    uint32_t cell = 0;
    uint32_t seg_count = 1;
    uint32_t retrace_start = 0;
    bool replace = false;
    bool reuse_light = false;

    bool operator==(const PathInfoFields&) const = default;
};

uint32_t encode_path_info(const PathInfoFields& fields);  // throws on range violations
PathInfoFields decode_path_info(uint32_t word);

static_assert(sizeof(uint32_t) == 4, "path info word must serialize to 4 bytes");

/// 2-D photon storage: row = bounce index, column = path index; a bounce row
/// is contiguous. A path of length k holds live photons in rows 0..k-1 and
/// empty records above.
class PhotonMap {
public:
    PhotonMap() = default;
    PhotonMap(uint32_t n_paths, uint32_t max_bounces)
        : n_paths_(n_paths), max_bounces_(max_bounces), photons_(
              static_cast<size_t>(n_paths) * max_bounces) {}

    uint32_t n_paths() const { return n_paths_; }
    uint32_t max_bounces() const { return max_bounces_; }

    size_t flat_index(uint32_t bounce, uint32_t path) const;  // throws when out of range

    Photon& at(uint32_t bounce, uint32_t path) { return photons_[flat_index(bounce, path)]; }
    const Photon& at(uint32_t bounce, uint32_t path) const {
        return photons_[flat_index(bounce, path)];
    }

    const std::vector<Photon>& records() const { return photons_; }
    std::vector<Photon>& records() { return photons_; }

private:
    uint32_t n_paths_ = 0;
    uint32_t max_bounces_ = 0;
    std::vector<Photon> photons_;
};

/// Auxiliary per-vertex state the 32-byte photon cannot carry: world position
/// and the outgoing direction of the next segment.
struct PathVertexAux {
    Vec3 position;
    Vec3 outgoing;
};

struct MemoryFootprint {
    double path_info = 0;          // MiB
    double origin_positions = 0;   // MiB, area lights only
    double distribution_maps = 0;  // MiB, DM_T + DM_C
    double pruned_array = 0;       // MiB
    double photon_map = 0;         // MiB
    double subtotal_reuse = 0;     // everything except the photon map
    double total = 0;
};

/// Pure arithmetic, no allocation.
MemoryFootprint memory_footprint(uint64_t n_paths, uint32_t max_bounces,
                                 const std::vector<uint32_t>& dm_dims, bool area_light);

/// Little-endian dump: 16-byte header (magic "PHM1", n_paths, max_bounces,
/// reserved) followed by the row-major records.
void write_photon_dump(const PhotonMap& map, const std::string& path);
PhotonMap read_photon_dump(const std::string& path);

}  // namespace pathreuse
