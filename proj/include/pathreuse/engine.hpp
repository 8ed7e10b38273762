#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pathreuse/light.hpp"
#include "pathreuse/photon_store.hpp"
#include "pathreuse/scene.hpp"

namespace pathreuse {

enum class EngineMode { Baseline, Naive, ErrorBased };

const char* to_string(EngineMode mode);
EngineMode engine_mode_from_string(const std::string& name);

struct FrameStats {
    int frame = 0;
    EngineMode mode = EngineMode::Baseline;
    uint64_t rays_traced = 0;
    uint64_t rays_reused = 0;
    uint64_t paths_replaced = 0;
    uint64_t paths_pruned = 0;
    uint64_t paths_filled = 0;
    uint64_t visibility_rays = 0;
    double t_update = 0, t_occlusion = 0, t_dm = 0, t_prune = 0, t_fill = 0, t_trace = 0,
           t_gather = 0;
};

/// Relative energy comparison, per channel with conjunction over channels:
/// -T*e_old <= e_new - e_old <= T*e_old must hold for R, G and B.
inline bool energies_close(const Vec3& e_old, const Vec3& e_new, float threshold) {
    for (int ch = 0; ch < 3; ++ch) {
        const float delta = e_new[ch] - e_old[ch];
        const float bound = threshold * e_old[ch];
        if (delta < -bound || delta > bound) return false;
    }
    return true;
}

struct EngineConfig {
    EngineMode mode = EngineMode::Naive;
    uint32_t n_paths = 100000;
    uint32_t max_bounces = 7;  // <= 16
    std::vector<uint32_t> dm_dims = {8, 8, 64, 64};
    float threshold = 0.001f;  // error-based energy threshold T
    uint64_t seed = 1;
    float gather_radius = 0.25f;
    unsigned workers = 1;
    bool record_flags = false;  // keep per-segment occlusion flags for inspection
};

constexpr uint8_t kNoRetrace = 0xFF;

/// Prune selection for one DM cell holding `cell_paths` live paths, counted
/// against the frozen pre-prune count `dm_c` and target `dm_t`. Every path is
/// marked independently with probability (dm_c - dm_t) / dm_c; the survivors
/// are then trimmed from the highest path id down so exactly dm_t remain.
/// Deterministic in (seed, frame) and invariant to the order of `cell_paths`.
std::vector<uint32_t> select_paths_to_prune(std::span<const uint32_t> cell_paths, uint32_t dm_c,
                                            uint32_t dm_t, uint64_t seed, uint32_t frame);

/// Per-frame path-reuse engine: update path origins, dynamic-occlusion
/// detection (naive or error-based), DM compute/prune/fill, and the trace
/// loop. Results are bitwise reproducible for a fixed seed on any worker
/// count.
class Engine {
public:
    Engine(Scene scene, EngineConfig cfg);

    FrameStats run_frame();

    // -- introspection (used by the renderer, tools and tests) --
    const Scene& scene() const { return scene_; }
    const EngineConfig& config() const { return cfg_; }
    int frames_run() const { return frame_counter_; }
    const SceneState& scene_state() const { return state_cur_; }

    uint32_t total_paths() const { return total_paths_; }
    size_t light_count() const { return lights_.size(); }
    size_t light_of_path(uint32_t path) const;
    Vec3 flux_per_path(size_t light_index) const { return lights_[light_index].flux_per_path; }

    const PhotonMap& photon_map() const { return photons_; }
    const std::vector<PathVertexAux>& vertex_aux() const { return aux_; }
    const PathVertexAux& aux_at(uint32_t bounce, uint32_t path) const {
        return aux_[photons_.flat_index(bounce, path)];
    }

    const std::vector<uint32_t>& path_info_words() const { return path_info_; }
    uint8_t photon_count(uint32_t path) const { return photon_count_[path]; }
    bool path_escaped(uint32_t path) const { return escaped_[path] != 0; }
    bool path_alive(uint32_t path) const { return status_[path] == 1; }
    uint8_t last_retrace_start(uint32_t path) const { return retrace_start_[path]; }
    Vec3 path_origin(uint32_t path) const { return origin_[path]; }
    Vec3 path_emission_dir(uint32_t path) const { return emission_dir_[path]; }
    uint32_t path_cell(uint32_t path) const { return cell_[path]; }
    uint32_t path_epoch(uint32_t path) const { return epoch_[path]; }

    const DmLayout& dm_layout(size_t light_index) const { return lights_[light_index].layout; }
    const DistributionMap& dm_target(size_t light_index) const { return lights_[light_index].dm_t; }
    const DistributionMap& dm_current(size_t light_index) const {
        return lights_[light_index].dm_c;
    }
    const std::vector<uint32_t>& pruned_paths() const { return pruned_; }
    /// Per-path bitmask of flagged segments from the last frame's occlusion
    /// stage (record_flags only).
    const std::vector<uint32_t>& segment_flags() const { return segment_flags_; }

    uint32_t segment_count(uint32_t path) const {
        return photon_count_[path] + (escaped_[path] ? 1u : 0u);
    }
    /// Segment i runs from vertex i-1 (or the light) toward vertex i.
    Vec3 segment_origin(uint32_t path, uint32_t segment) const;
    Vec3 segment_dir(uint32_t path, uint32_t segment) const;
    /// Far endpoint used for conservative tests (escape segments are clipped
    /// to twice the scene diagonal).
    Vec3 segment_end(uint32_t path, uint32_t segment) const;

    float position_epsilon() const { return eps_world_; }

private:
    struct LightBlock {
        const Light* light = nullptr;
        DmLayout layout;
        DistributionMap dm_t;
        DistributionMap dm_c;
        uint32_t path_begin = 0;
        uint32_t path_end = 0;
        Vec3 flux_per_path;
        LightPose pose_prev;
        LightPose pose_now;
        bool moved = false;
    };

    void stage_update_origins(FrameStats& stats);
    void stage_occlusions(FrameStats& stats);
    void stage_compute_dm(FrameStats& stats);
    void stage_prune(FrameStats& stats);
    void stage_fill(FrameStats& stats);
    void stage_trace(FrameStats& stats);

    uint32_t compute_flag_mask(uint32_t path) const;
    void verify_path_error_based(uint32_t path, const LightBlock& block, uint32_t flags,
                                 uint64_t& visibility_rays);
    Vec3 sample_bounce(const Material& mat, const Vec3& normal, const Vec3& incoming,
                       uint32_t path, uint32_t bounce_key) const;
    void truncate_path(uint32_t path, uint32_t new_count, bool escaped);
    void release_all_paths();
    void refresh_path_info(uint32_t path, const LightBlock& block, bool reused_light);

    Scene scene_;
    EngineConfig cfg_;
    int frame_counter_ = 0;
    float eps_world_ = 1e-4f;
    SceneState state_cur_;

    std::vector<LightBlock> lights_;
    uint32_t total_paths_ = 0;

    PhotonMap photons_;
    std::vector<PathVertexAux> aux_;
    std::vector<uint32_t> path_info_;
    std::vector<Vec3> origin_;
    std::vector<Vec3> emission_dir_;
    std::vector<CanonicalCoords> canonical_;
    std::vector<uint32_t> cell_;
    std::vector<uint32_t> epoch_;
    std::vector<uint8_t> photon_count_;
    std::vector<uint8_t> escaped_;
    std::vector<uint8_t> status_;  // 0 = dead/free, 1 = live, 2 = needs replacement
    std::vector<uint8_t> retrace_start_;
    std::vector<uint8_t> filled_this_frame_;
    std::vector<uint32_t> pruned_;
    std::vector<uint32_t> segment_flags_;
    std::vector<Aabb> occlusion_boxes_;  // conservative per-dynamic test boxes
};

}  // namespace pathreuse
