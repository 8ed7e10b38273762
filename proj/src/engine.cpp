#include "pathreuse/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "pathreuse/parallel.hpp"

namespace pathreuse {

namespace {

constexpr uint8_t kDead = 0;
constexpr uint8_t kLive = 1;
constexpr uint8_t kReplace = 2;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vec3 cosine_sample(const Vec3& normal, float u1, float u2) {
    const float r = std::sqrt(u1);
    const float phi = 2.0f * static_cast<float>(M_PI) * u2;
    const float z = std::sqrt(std::max(0.0f, 1.0f - u1));
    Vec3 t, b;
    orthonormal_basis(normal, t, b);
    return normalized(t * (r * std::cos(phi)) + b * (r * std::sin(phi)) + normal * z);
}

Vec3 phong_lobe_sample(const Vec3& mirror, float exponent, float u1, float u2) {
    const float cos_theta = std::pow(u1, 1.0f / (exponent + 1.0f));
    const float sin_theta = std::sqrt(std::max(0.0f, 1.0f - cos_theta * cos_theta));
    const float phi = 2.0f * static_cast<float>(M_PI) * u2;
    Vec3 t, b;
    orthonormal_basis(mirror, t, b);
    return normalized(t * (sin_theta * std::cos(phi)) + b * (sin_theta * std::sin(phi)) +
                      mirror * cos_theta);
}

}  // namespace

const char* to_string(EngineMode mode) {
    switch (mode) {
        case EngineMode::Baseline: return "baseline";
        case EngineMode::Naive: return "naive";
        case EngineMode::ErrorBased: return "error";
    }
    return "?";
}

EngineMode engine_mode_from_string(const std::string& name) {
    if (name == "baseline") return EngineMode::Baseline;
    if (name == "naive") return EngineMode::Naive;
    if (name == "error" || name == "error_based" || name == "error-based")
        return EngineMode::ErrorBased;
    throw std::invalid_argument("unknown engine mode: " + name);
}

Engine::Engine(Scene scene, EngineConfig cfg) : scene_(std::move(scene)), cfg_(std::move(cfg)) {
    if (cfg_.n_paths == 0) throw std::invalid_argument("engine: n_paths must be positive");
    if (cfg_.max_bounces < 1 || cfg_.max_bounces > 16)
        throw std::invalid_argument("engine: max_bounces must be in 1..16");
    if (cfg_.dm_dims.size() != 4)
        throw std::invalid_argument("engine: dm_dims needs 4 axis counts");
    if (cfg_.workers == 0) cfg_.workers = default_worker_count();
    if (scene_.lights.empty()) throw std::invalid_argument("engine: scene has no lights");
    if (!scene_.static_bvh && scene_.objects.empty())
        throw std::invalid_argument("engine: scene was not finalized");

    eps_world_ = 1e-4f * scene_.diagonal();

    const size_t n_lights = scene_.lights.size();
    const uint32_t base = cfg_.n_paths / static_cast<uint32_t>(n_lights);
    const uint32_t extra = cfg_.n_paths % static_cast<uint32_t>(n_lights);
    uint32_t next = 0;
    for (size_t li = 0; li < n_lights; ++li) {
        LightBlock block;
        block.light = &scene_.lights[li];
        const uint32_t count = base + (li < extra ? 1u : 0u);
        if (count == 0) throw std::invalid_argument("engine: fewer paths than lights");
        block.path_begin = next;
        block.path_end = next + count;
        next = block.path_end;

        if (block.light->param_dims() == 4) {
            block.layout.dims = cfg_.dm_dims;
        } else {
            block.layout.dims = {cfg_.dm_dims[2], cfg_.dm_dims[3]};
        }
        block.dm_t = init_dm_target(*block.light, block.layout, count, cfg_.seed);
        const double binned = static_cast<double>(block.dm_t.total());
        block.flux_per_path = block.light->flux / static_cast<float>(binned);
        block.dm_c = DistributionMap(block.layout);
        block.pose_now = light_pose_at(*block.light, 0);
        block.pose_prev = block.pose_now;
        lights_.push_back(std::move(block));
    }
    total_paths_ = cfg_.n_paths;

    photons_ = PhotonMap(total_paths_, cfg_.max_bounces);
    aux_.resize(photons_.records().size());
    path_info_.assign(total_paths_, 0);
    origin_.assign(total_paths_, Vec3());
    emission_dir_.assign(total_paths_, Vec3(0, 0, 1));
    canonical_.assign(total_paths_, CanonicalCoords{});
    cell_.assign(total_paths_, 0);
    epoch_.assign(total_paths_, 0);
    photon_count_.assign(total_paths_, 0);
    escaped_.assign(total_paths_, 0);
    status_.assign(total_paths_, kDead);
    retrace_start_.assign(total_paths_, kNoRetrace);
    filled_this_frame_.assign(total_paths_, 0);
}

size_t Engine::light_of_path(uint32_t path) const {
    for (size_t li = 0; li < lights_.size(); ++li)
        if (path >= lights_[li].path_begin && path < lights_[li].path_end) return li;
    throw std::out_of_range("light_of_path: path out of range");
}

Vec3 Engine::segment_origin(uint32_t path, uint32_t segment) const {
    if (segment == 0) return origin_[path];
    return aux_[photons_.flat_index(segment - 1, path)].position;
}

Vec3 Engine::segment_dir(uint32_t path, uint32_t segment) const {
    if (segment == 0) return emission_dir_[path];
    return aux_[photons_.flat_index(segment - 1, path)].outgoing;
}

Vec3 Engine::segment_end(uint32_t path, uint32_t segment) const {
    if (segment < photon_count_[path])
        return aux_[photons_.flat_index(segment, path)].position;
    return segment_origin(path, segment) + segment_dir(path, segment) * (2.0f * scene_.diagonal());
}

void Engine::truncate_path(uint32_t path, uint32_t new_count, bool escaped) {
    for (uint32_t b = new_count; b < cfg_.max_bounces; ++b) {
        photons_.at(b, path) = Photon{};
    }
    photon_count_[path] = static_cast<uint8_t>(new_count);
    escaped_[path] = escaped ? 1 : 0;
}

void Engine::release_all_paths() {
    for (uint32_t p = 0; p < total_paths_; ++p) {
        if (status_[p] != kDead) truncate_path(p, 0, false);
        status_[p] = kDead;
    }
    std::fill(photons_.records().begin(), photons_.records().end(), Photon{});
    std::fill(photon_count_.begin(), photon_count_.end(), uint8_t{0});
    std::fill(escaped_.begin(), escaped_.end(), uint8_t{0});
}

Vec3 Engine::sample_bounce(const Material& mat, const Vec3& normal, const Vec3& incoming,
                           uint32_t path, uint32_t bounce_key) const {
    const RngKey k0{path, epoch_[path], bounce_key, RngPurpose::BounceDir, 0};
    const RngKey k1{path, epoch_[path], bounce_key, RngPurpose::BounceDir, 1};
    const float u1 = rng_uniform(cfg_.seed, k0);
    const float u2 = rng_uniform(cfg_.seed, k1);
    if (mat.kind == MaterialKind::Diffuse) return cosine_sample(normal, u1, u2);
    const Vec3 mirror = normalized(incoming - normal * (2.0f * dot(incoming, normal)));
    Vec3 out = phong_lobe_sample(mirror, mat.glossy_exponent, u1, u2);
    if (dot(out, normal) <= 0.0f) out = mirror;  // keep lobe samples on the surface side
    return out;
}

uint32_t Engine::compute_flag_mask(uint32_t path) const {
    const uint32_t k = photon_count_[path];
    const uint32_t segs = segment_count(path);
    uint32_t mask = 0;
    for (uint32_t i = 0; i < segs; ++i) {
        bool flagged = false;
        if (i > 0) {
            const Photon& v = photons_.at(i - 1, path);
            if (v.live() && scene_.objects[v.object_id].dynamic) flagged = true;
        }
        if (!flagged && i < k) {
            const Photon& v = photons_.at(i, path);
            if (v.live() && scene_.objects[v.object_id].dynamic) flagged = true;
        }
        if (!flagged) {
            const Vec3 a = segment_origin(path, i);
            const Vec3 b = segment_end(path, i);
            for (const Aabb& box : occlusion_boxes_) {
                if (segment_intersects_aabb(a, b, box)) {
                    flagged = true;
                    break;
                }
            }
        }
        if (flagged) mask |= 1u << i;
    }
    return mask;
}

FrameStats Engine::run_frame() {
    const int frame = frame_counter_++;
    state_cur_ = state_at(scene_, frame);

    for (LightBlock& block : lights_) {
        block.pose_prev = block.pose_now;
        block.pose_now = light_pose_at(*block.light, frame);
        block.moved = frame > 0 && !(block.pose_now == block.pose_prev);
    }

    occlusion_boxes_.clear();
    if (frame > 0) {
        for (const PlacedDynamic& pd : state_cur_.placed_dynamics) {
            Aabb box = Aabb::united(pd.bounds_previous, pd.bounds_current);
            box.inflate(eps_world_);
            occlusion_boxes_.push_back(box);
        }
    }

    FrameStats stats;
    stats.frame = frame;
    stats.mode = cfg_.mode;
    pruned_.clear();
    std::fill(filled_this_frame_.begin(), filled_this_frame_.end(), uint8_t{0});
    std::fill(retrace_start_.begin(), retrace_start_.end(), kNoRetrace);
    if (cfg_.record_flags) segment_flags_.assign(total_paths_, 0);

    if (cfg_.mode == EngineMode::Baseline) {
        release_all_paths();
        for (LightBlock& block : lights_) {
            std::fill(block.dm_c.counts.begin(), block.dm_c.counts.end(), 0u);
        }
    } else if (frame > 0) {
        stage_update_origins(stats);
        stage_occlusions(stats);
    }
    stage_compute_dm(stats);
    if (cfg_.mode != EngineMode::Baseline) stage_prune(stats);
    stage_fill(stats);
    stage_trace(stats);
    return stats;
}

void Engine::stage_update_origins(FrameStats& stats) {
    const auto t0 = std::chrono::steady_clock::now();
    std::atomic<uint64_t> vis_rays{0};
    for (LightBlock& block : lights_) {
        if (!block.moved) continue;
        const Light& light = *block.light;
        const LightPose& pose = block.pose_now;
        parallel_for(block.path_end - block.path_begin, cfg_.workers,
                     [&](uint32_t begin, uint32_t end) {
            uint64_t local_rays = 0;
            for (uint32_t idx = begin; idx < end; ++idx) {
                const uint32_t p = block.path_begin + idx;
                if (status_[p] != kLive) continue;
                if (!light.is_area()) {
                    origin_[p] = pose.position;
                    if (photon_count_[p] > 0) {
                        const Vec3 primary = aux_[photons_.flat_index(0, p)].position;
                        const Vec3 to_primary = primary - pose.position;
                        const float dist = length(to_primary);
                        if (dist <= eps_world_) {
                            status_[p] = kReplace;
                            continue;
                        }
                        const Vec3 dir = to_primary / dist;
                        emission_dir_[p] = dir;
                        ++local_rays;
                        if (occluded(Ray{pose.position, dir, eps_world_, dist - eps_world_},
                                     state_cur_)) {
                            status_[p] = kReplace;
                        }
                    }
                } else {
                    if (photon_count_[p] > 0) {
                        // Slide the origin along the unchanged direction onto
                        // the new light plane; off-surface results are caught
                        // by the reparametrisation pass.
                        const Vec3 d = emission_dir_[p];
                        const Vec3 primary = aux_[photons_.flat_index(0, p)].position;
                        const float denom = dot(d, pose.normal);
                        if (denom <= 1e-6f) {
                            status_[p] = kReplace;
                            continue;
                        }
                        const float s = dot(primary - pose.position, pose.normal) / denom;
                        if (s <= 0.0f) {
                            status_[p] = kReplace;
                            continue;
                        }
                        origin_[p] = primary - d * s;
                    } else {
                        CanonicalCoords cc = canonical_[p];
                        origin_[p] = warp_canonical(light, pose, cc).origin;
                    }
                }
            }
            vis_rays.fetch_add(local_rays, std::memory_order_relaxed);
        });
    }
    stats.visibility_rays += vis_rays.load();
    stats.t_update = seconds_since(t0);
}

void Engine::stage_occlusions(FrameStats& stats) {
    const auto t0 = std::chrono::steady_clock::now();
    const bool any_boxes = !occlusion_boxes_.empty();
    if (!any_boxes) {
        stats.t_occlusion = seconds_since(t0);
        return;
    }
    std::atomic<uint64_t> vis_rays{0};
    for (LightBlock& block : lights_) {
        parallel_for(block.path_end - block.path_begin, cfg_.workers,
                     [&](uint32_t begin, uint32_t end) {
            uint64_t local_rays = 0;
            for (uint32_t idx = begin; idx < end; ++idx) {
                const uint32_t p = block.path_begin + idx;
                if (status_[p] != kLive) continue;
                const uint32_t flags = compute_flag_mask(p);
                if (cfg_.record_flags) segment_flags_[p] = flags;
                if (flags == 0) continue;
                if (cfg_.mode == EngineMode::Naive) {
                    uint32_t first = 0;
                    while (!(flags & (1u << first))) ++first;
                    retrace_start_[p] = static_cast<uint8_t>(first);
                } else {
                    verify_path_error_based(p, block, flags, local_rays);
                }
            }
            vis_rays.fetch_add(local_rays, std::memory_order_relaxed);
        });
    }
    stats.visibility_rays += vis_rays.load();
    stats.t_occlusion = seconds_since(t0);
}

void Engine::verify_path_error_based(uint32_t path, const LightBlock& block, uint32_t flags,
                                     uint64_t& visibility_rays) {
    const uint32_t k = photon_count_[path];
    const uint32_t segs = segment_count(path);
    bool force_next = false;
    uint32_t i = 0;
    while (i < segs) {
        const bool flagged = force_next || (flags & (1u << i));
        force_next = false;
        if (!flagged) {
            ++i;
            continue;
        }
        const Vec3 o = segment_origin(path, i);
        const Vec3 d = segment_dir(path, i);
        ++visibility_rays;
        const auto hit = intersect_scene(Ray{o, d, eps_world_}, state_cur_);
        if (i == k) {
            // Escape segment: a new blocker means the path gains vertices.
            if (hit) retrace_start_[path] = static_cast<uint8_t>(i);
            return;
        }
        if (!hit) {
            // The stored destination is gone; the segment now leaves the
            // scene and everything downstream dies with it.
            truncate_path(path, i, true);
            return;
        }
        const size_t slot = photons_.flat_index(i, path);
        Photon& stored = photons_.records()[photons_.flat_index(i, path)];
        const Vec3 e_prev =
            i == 0 ? block.flux_per_path : photons_.at(i - 1, path).energy;
        const Material& mat = scene_.objects[hit->object_id].material;
        const Vec3 e_new = e_prev * mat.albedo;
        const bool glossy = mat.kind == MaterialKind::Glossy;
        if (glossy || !energies_close(stored.energy, e_new, cfg_.threshold)) {
            // Accept the new vertex and regenerate the rest of the path.
            stored.incoming_dir = d;
            stored.object_id = hit->object_id;
            stored.energy = e_new;
            stored.radius = cfg_.gather_radius;
            aux_[slot].position = hit->position;
            aux_[slot].outgoing = sample_bounce(mat, hit->normal, d, path, i + 1);
            retrace_start_[path] = static_cast<uint8_t>(i + 1);
            return;
        }
        // Energies match: keep the stored energy, adopt the fresh position.
        const bool close_pos = length(hit->position - aux_[slot].position) <= eps_world_;
        stored.incoming_dir = d;
        stored.object_id = hit->object_id;
        aux_[slot].position = hit->position;
        if (i + 1 >= segs) return;
        const bool hit_dynamic = scene_.objects[hit->object_id].dynamic;
        if (close_pos && !hit_dynamic && !(flags & (1u << (i + 1)))) {
            i += 2;  // the next segment is provably unchanged
            continue;
        }
        if (i + 1 < k) {
            const Vec3 next_dest = aux_[photons_.flat_index(i + 1, path)].position;
            aux_[slot].outgoing = normalized(next_dest - hit->position);
        }
        force_next = true;
        ++i;
    }
}

void Engine::stage_compute_dm(FrameStats& stats) {
    const auto t0 = std::chrono::steady_clock::now();
    std::atomic<uint64_t> replaced{0};
    for (LightBlock& block : lights_) {
        std::fill(block.dm_c.counts.begin(), block.dm_c.counts.end(), 0u);
        const Light& light = *block.light;
        const LightPose& pose = block.pose_now;
        parallel_for(block.path_end - block.path_begin, cfg_.workers,
                     [&](uint32_t begin, uint32_t end) {
            uint64_t local_replaced = 0;
            for (uint32_t idx = begin; idx < end; ++idx) {
                const uint32_t p = block.path_begin + idx;
                if (status_[p] == kDead) continue;
                bool ok = status_[p] == kLive;
                if (ok) {
                    const auto cc = canonical_of(light, pose, origin_[p], emission_dir_[p]);
                    if (cc) {
                        canonical_[p] = *cc;
                        cell_[p] = cell_of_canonical(block.layout, *cc);
                        std::atomic_ref<uint32_t> counter(block.dm_c.counts[cell_[p]]);
                        counter.fetch_add(1, std::memory_order_relaxed);
                    } else {
                        ok = false;
                    }
                }
                if (!ok) {
                    truncate_path(p, 0, false);
                    status_[p] = kDead;
                    ++local_replaced;
                }
            }
            replaced.fetch_add(local_replaced, std::memory_order_relaxed);
        });
    }
    stats.paths_replaced = replaced.load();
    stats.t_dm = seconds_since(t0);
}

std::vector<uint32_t> select_paths_to_prune(std::span<const uint32_t> cell_paths, uint32_t dm_c,
                                            uint32_t dm_t, uint64_t seed, uint32_t frame) {
    std::vector<uint32_t> sorted(cell_paths.begin(), cell_paths.end());
    std::sort(sorted.begin(), sorted.end());

    const double prob = prune_probability(dm_c, dm_t);
    std::vector<uint8_t> marks(sorted.size(), 0);
    uint32_t survivors = 0;
    for (size_t i = 0; i < sorted.size(); ++i) {
        const float u =
            rng_uniform(seed, RngKey{sorted[i], frame, 0, RngPurpose::PruneMark, 0});
        if (prob > 0.0 && u < prob)
            marks[i] = 1;
        else
            ++survivors;
    }
    // The later fill can only add paths, so overfull cells must land exactly
    // on the target: trim the extra survivors from the top path id down.
    for (size_t i = sorted.size(); survivors > dm_t && i-- > 0;) {
        if (!marks[i]) {
            marks[i] = 1;
            --survivors;
        }
    }
    std::vector<uint32_t> pruned;
    for (size_t i = 0; i < sorted.size(); ++i)
        if (marks[i]) pruned.push_back(sorted[i]);
    return pruned;
}

void Engine::stage_prune(FrameStats& stats) {
    const auto t0 = std::chrono::steady_clock::now();
    const uint32_t frame = static_cast<uint32_t>(frame_counter_ - 1);

    for (LightBlock& block : lights_) {
        std::vector<std::vector<uint32_t>> by_cell(block.layout.total_cells());
        for (uint32_t p = block.path_begin; p < block.path_end; ++p) {
            if (status_[p] == kLive) by_cell[cell_[p]].push_back(p);
        }
        for (uint32_t c = 0; c < block.layout.total_cells(); ++c) {
            if (block.dm_c.counts[c] <= block.dm_t.counts[c]) continue;
            const auto pruned = select_paths_to_prune(by_cell[c], block.dm_c.counts[c],
                                                      block.dm_t.counts[c], cfg_.seed, frame);
            for (uint32_t p : pruned) {
                --block.dm_c.counts[cell_[p]];
                truncate_path(p, 0, false);
                status_[p] = kDead;
                pruned_.push_back(p);
            }
        }
    }
    std::sort(pruned_.begin(), pruned_.end());
    stats.paths_pruned = pruned_.size();
    stats.t_prune = seconds_since(t0);
}

void Engine::stage_fill(FrameStats& stats) {
    const auto t0 = std::chrono::steady_clock::now();
    uint64_t filled = 0;
    for (LightBlock& block : lights_) {
        // Deficit cells in ascending order get free slots in ascending order.
        std::vector<std::pair<uint32_t, uint32_t>> assignments;  // (slot, cell)
        uint32_t slot = block.path_begin;
        for (uint32_t c = 0; c < block.layout.total_cells(); ++c) {
            uint32_t need = block.dm_t.counts[c] > block.dm_c.counts[c]
                                ? block.dm_t.counts[c] - block.dm_c.counts[c]
                                : 0;
            while (need > 0) {
                while (slot < block.path_end && status_[slot] != kDead) ++slot;
                if (slot >= block.path_end)
                    throw std::logic_error("fill: ran out of free path slots");
                assignments.emplace_back(slot, c);
                ++slot;
                --need;
            }
            block.dm_c.counts[c] = std::max(block.dm_c.counts[c], block.dm_t.counts[c]);
        }
        const Light& light = *block.light;
        const LightPose& pose = block.pose_now;
        parallel_for(static_cast<uint32_t>(assignments.size()), cfg_.workers,
                     [&](uint32_t begin, uint32_t end) {
            for (uint32_t idx = begin; idx < end; ++idx) {
                const auto [p, c] = assignments[idx];
                epoch_[p] += 1;
                CanonicalCoords cc;
                const EmissionSample es =
                    sample_in_cell(light, pose, block.layout, c, cfg_.seed,
                                   RngKey{p, epoch_[p], 0, RngPurpose::Emission, 0}, &cc);
                origin_[p] = es.origin;
                emission_dir_[p] = es.dir;
                canonical_[p] = cc;
                cell_[p] = c;
                status_[p] = kLive;
                retrace_start_[p] = 0;
                filled_this_frame_[p] = 1;
                photon_count_[p] = 0;
                escaped_[p] = 0;
            }
        });
        filled += assignments.size();
    }
    stats.paths_filled = filled;
    stats.t_fill = seconds_since(t0);
}

void Engine::stage_trace(FrameStats& stats) {
    const auto t0 = std::chrono::steady_clock::now();
    std::atomic<uint64_t> traced{0};
    std::atomic<uint64_t> segments{0};
    for (LightBlock& block : lights_) {
        parallel_for(block.path_end - block.path_begin, cfg_.workers,
                     [&](uint32_t begin, uint32_t end) {
            uint64_t local_traced = 0;
            uint64_t local_segments = 0;
            for (uint32_t idx = begin; idx < end; ++idx) {
                const uint32_t p = block.path_begin + idx;
                if (status_[p] != kLive) continue;
                const uint8_t start = retrace_start_[p];
                if (start != kNoRetrace) {
                    uint32_t b = start;
                    Vec3 pos = segment_origin(p, b);
                    Vec3 dir = segment_dir(p, b);
                    Vec3 energy = b == 0 ? block.flux_per_path : photons_.at(b - 1, p).energy;
                    bool escaped = false;
                    while (b < cfg_.max_bounces) {
                        ++local_traced;
                        const auto hit = intersect_scene(Ray{pos, dir, eps_world_}, state_cur_);
                        if (!hit) {
                            escaped = true;
                            break;
                        }
                        const Material& mat = scene_.objects[hit->object_id].material;
                        energy = energy * mat.albedo;
                        const size_t slot = photons_.flat_index(b, p);
                        photons_.records()[slot] =
                            Photon{dir, hit->object_id, energy, cfg_.gather_radius};
                        aux_[slot].position = hit->position;
                        const Vec3 out = sample_bounce(mat, hit->normal, dir, p, b + 1);
                        aux_[slot].outgoing = out;
                        pos = hit->position;
                        dir = out;
                        ++b;
                    }
                    truncate_path(p, b, escaped);
                }
                local_segments += segment_count(p);
                refresh_path_info(p, block, filled_this_frame_[p] == 0);
            }
            traced.fetch_add(local_traced, std::memory_order_relaxed);
            segments.fetch_add(local_segments, std::memory_order_relaxed);
        });
    }
    stats.rays_traced = traced.load();
    stats.rays_reused = segments.load() - stats.rays_traced;
    stats.t_trace = seconds_since(t0);
}

void Engine::refresh_path_info(uint32_t path, const LightBlock& block, bool reused_light) {
    (void)block;
    PathInfoFields f;
    f.cell = cell_[path];
    f.seg_count = std::max(1u, segment_count(path));
    const uint8_t start = retrace_start_[path];
    f.retrace_start = start == kNoRetrace ? 0u : std::min<uint32_t>(start, 15u);
    f.replace = false;
    f.reuse_light = reused_light;
    path_info_[path] = encode_path_info(f);
}

}  // namespace pathreuse
