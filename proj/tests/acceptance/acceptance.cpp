// Acceptance gate: one function per criterion, one PASS/FAIL line each.
// Run with no arguments for the full gate, or with criterion numbers to run
// a subset. Exit code 0 iff every selected criterion passes.
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pathreuse/engine.hpp"
#include "pathreuse/gather.hpp"
#include "pathreuse/parallel.hpp"
#include "pathreuse/stats.hpp"

using namespace pathreuse;

namespace {

int checks_failed = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++checks_failed;
        std::cout << "    check failed: " << what << "\n";
    }
}

EngineConfig base_config(EngineMode mode, uint32_t paths,
                         std::vector<uint32_t> dm = {1, 1, 8, 8}) {
    EngineConfig cfg;
    cfg.mode = mode;
    cfg.n_paths = paths;
    cfg.max_bounces = 7;
    cfg.dm_dims = std::move(dm);
    cfg.threshold = 0.001f;
    cfg.seed = 1;
    cfg.workers = default_worker_count();
    return cfg;
}

std::string image_bytes(const Image& img) {
    namespace fs = std::filesystem;
    const auto path = (fs::temp_directory_path() / "pathreuse_acceptance_frame.ppm").string();
    write_image(img, path);
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    fs::remove(path);
    return bytes;
}

Image render(const Engine& engine) {
    return gather_image(engine.scene_state(), engine.photon_map(), engine.vertex_aux(),
                       engine.scene().camera, engine.config().gather_radius,
                       engine.config().workers);
}

// --- criterion 1: Eq. 1 unit values ---------------------------------------
bool criterion_1() {
    expect(prune_probability(4, 2) == 0.5, "prune_probability(4,2) == 0.5");
    for (uint32_t k : {0u, 1u, 7u, 1000u})
        expect(prune_probability(k, k) == 0.0, "prune_probability(k,k) == 0");
    expect(prune_probability(10, 0) == 1.0, "prune_probability(10,0) == 1");
    return checks_failed == 0;
}

// --- criterion 2: Eq. 2 examples + randomized oracle ----------------------
bool criterion_2() {
    expect(energies_close({3, 4, 5}, {3, 4, 5}, 0.0f), "equal energies, T=0");
    expect(energies_close({100, 100, 100}, {100.05f, 100, 100}, 0.001f), "delta 0.05 vs bound 0.1");
    expect(!energies_close({100, 100, 100}, {101, 100, 100}, 0.001f), "delta 1 vs bound 0.1");
    std::mt19937 rng(9);
    std::uniform_real_distribution<float> ue(0.0f, 50.0f);
    std::uniform_real_distribution<float> ud(-0.2f, 0.2f);
    std::uniform_real_distribution<float> ut(0.0f, 0.01f);
    for (int i = 0; i < 1000000; ++i) {
        const Vec3 a{ue(rng), ue(rng), ue(rng)};
        const Vec3 b{a.x + ud(rng), a.y + ud(rng), a.z + ud(rng)};
        const float t = ut(rng);
        bool oracle = true;
        for (int ch = 0; ch < 3; ++ch)
            if (!(-t * a[ch] <= b[ch] - a[ch] && b[ch] - a[ch] <= t * a[ch])) oracle = false;
        if (energies_close(a, b, t) != oracle) {
            expect(false, "randomized oracle mismatch at trial " + std::to_string(i));
            break;
        }
    }
    return checks_failed == 0;
}

// --- criterion 3: Table 1 memory figures ----------------------------------
bool criterion_3() {
    const auto fp = memory_footprint(5000000, 7, {32, 32, 32, 32}, true);
    const auto within = [](double got, double want) {
        return std::abs(got - want) <= 0.005 * want;
    };
    expect(within(fp.photon_map, 1068.0), "photon map ~ 1068 MiB");
    expect(within(fp.path_info, 19.07), "path info ~ 19.07 MiB");
    expect(within(fp.origin_positions, 57.22), "origins ~ 57.22 MiB");
    expect(within(fp.distribution_maps, 8.00), "DMs ~ 8.00 MiB");
    expect(within(fp.pruned_array, 19.07), "pruned ~ 19.07 MiB");
    return checks_failed == 0;
}

// --- criterion 4: static full reuse ---------------------------------------
bool criterion_4() {
    for (const EngineMode mode : {EngineMode::Naive, EngineMode::ErrorBased}) {
        Engine engine(make_builtin_scene("static-box"), base_config(mode, 100000));
        std::string frame0;
        for (int f = 0; f < 10; ++f) {
            const FrameStats s = engine.run_frame();
            const std::string bytes = image_bytes(render(engine));
            if (f == 0) {
                frame0 = bytes;
            } else {
                expect(s.rays_traced == 0, "frame " + std::to_string(f) + " rays_traced == 0");
                expect(bytes == frame0, "frame " + std::to_string(f) + " image == frame 0");
            }
        }
    }
    return checks_failed == 0;
}

// --- criterion 5: naive prefix preservation -------------------------------
bool criterion_5() {
    Engine engine(make_builtin_scene("moving-cube"), base_config(EngineMode::Naive, 10000));
    engine.run_frame();
    for (int f = 1; f < 5; ++f) {
        const std::vector<Photon> before = engine.photon_map().records();
        std::vector<uint32_t> epoch(engine.total_paths());
        for (uint32_t p = 0; p < engine.total_paths(); ++p) epoch[p] = engine.path_epoch(p);
        engine.run_frame();
        for (uint32_t p = 0; p < engine.total_paths(); ++p) {
            if (!engine.path_alive(p) || engine.path_epoch(p) != epoch[p]) continue;
            const uint8_t start = engine.last_retrace_start(p);
            const uint32_t keep = start == kNoRetrace ? engine.photon_count(p) : start;
            for (uint32_t b = 0; b < keep; ++b) {
                const Photon& now = engine.photon_map().at(b, p);
                const Photon& then = before[engine.photon_map().flat_index(b, p)];
                if (std::memcmp(&now, &then, sizeof(Photon)) != 0) {
                    expect(false, "frame " + std::to_string(f) + " path " + std::to_string(p) +
                                      " bounce " + std::to_string(b) + " prefix changed");
                    return false;
                }
            }
        }
    }
    return checks_failed == 0;
}

// --- criterion 6: conservativeness oracle ---------------------------------
namespace conservativeness {

std::vector<Triangle> all_triangles(const Scene& scene, int frame) {
    std::vector<Triangle> tris = scene.static_triangles;
    const SceneState state = state_at(scene, frame);
    for (const PlacedDynamic& pd : state.placed_dynamics)
        tris.insert(tris.end(), pd.triangles.begin(), pd.triangles.end());
    return tris;
}

// First interior intersection parameter along [a, a + dir * len], or -1.
float first_interior_hit(const Vec3& a, const Vec3& dir, float len, float eps,
                         const std::vector<Triangle>& tris) {
    const Ray ray{a, dir, eps, len - eps};
    float best = -1.0f;
    for (const Triangle& tri : tris) {
        const auto t = intersect_triangle(ray, tri);
        if (t && (best < 0.0f || *t < best)) best = *t;
    }
    return best;
}

}  // namespace conservativeness

bool criterion_6() {
    using namespace conservativeness;
    const Scene probe = make_builtin_scene("moving-cube");
    size_t tri_count = probe.static_triangles.size();
    for (const SceneObject& obj : probe.objects)
        if (obj.dynamic) tri_count += obj.mesh.size();
    expect(tri_count <= 200, "scene stays under 200 triangles");

    EngineConfig cfg = base_config(EngineMode::Naive, 10000);
    cfg.record_flags = true;
    Engine engine(make_builtin_scene("moving-cube"), cfg);
    engine.run_frame();
    const float diag = engine.scene().diagonal();
    const float eps = 1e-4f * diag;
    uint64_t changed_segments = 0;
    for (int f = 1; f < 5; ++f) {
        struct Seg {
            Vec3 a, dir;
            float len;
        };
        std::vector<std::vector<Seg>> segs(engine.total_paths());
        std::vector<uint8_t> was_alive(engine.total_paths(), 0);
        for (uint32_t p = 0; p < engine.total_paths(); ++p) {
            if (!engine.path_alive(p)) continue;
            was_alive[p] = 1;
            for (uint32_t i = 0; i < engine.segment_count(p); ++i) {
                const Vec3 a = engine.segment_origin(p, i);
                const Vec3 b = engine.segment_end(p, i);
                segs[p].push_back({a, normalized(b - a), length(b - a)});
            }
        }
        const auto prev_tris = all_triangles(engine.scene(), f - 1);
        const auto cur_tris = all_triangles(engine.scene(), f);
        engine.run_frame();
        const auto& flags = engine.segment_flags();
        for (uint32_t p = 0; p < engine.total_paths(); ++p) {
            if (!was_alive[p]) continue;
            for (size_t i = 0; i < segs[p].size(); ++i) {
                const Seg& s = segs[p][i];
                const float t_prev = first_interior_hit(s.a, s.dir, s.len, eps, prev_tris);
                const float t_cur = first_interior_hit(s.a, s.dir, s.len, eps, cur_tris);
                const bool changed = (t_prev < 0.0f) != (t_cur < 0.0f) ||
                                     (t_prev >= 0.0f && std::abs(t_prev - t_cur) > eps);
                if (!changed) continue;
                ++changed_segments;
                if (!(flags[p] & (1u << i))) {
                    expect(false, "frame " + std::to_string(f) + " path " + std::to_string(p) +
                                      " segment " + std::to_string(i) +
                                      " visibility changed but was not flagged");
                    return false;
                }
            }
        }
    }
    expect(changed_segments > 0, "the oracle actually exercised changed segments");
    return checks_failed == 0;
}

// --- criterion 7: never-worse ray ordering --------------------------------
bool criterion_7() {
    const std::vector<uint32_t> area_dm = {4, 4, 8, 8};
    for (const char* scene :
         {"armadillo-analog", "merry-go-round-analog", "villa-analog"}) {
        Engine base(make_builtin_scene(scene), base_config(EngineMode::Baseline, 20000, area_dm));
        Engine naive(make_builtin_scene(scene), base_config(EngineMode::Naive, 20000, area_dm));
        Engine error(make_builtin_scene(scene),
                     base_config(EngineMode::ErrorBased, 20000, area_dm));
        uint64_t base_tail = 0, naive_tail = 0;
        for (int f = 0; f < 100; ++f) {
            const FrameStats sb = base.run_frame();
            const FrameStats sn = naive.run_frame();
            const FrameStats se = error.run_frame();
            if (!(se.rays_traced <= sn.rays_traced && sn.rays_traced <= sb.rays_traced)) {
                expect(false, std::string(scene) + " frame " + std::to_string(f) + ": error " +
                                  std::to_string(se.rays_traced) + " naive " +
                                  std::to_string(sn.rays_traced) + " baseline " +
                                  std::to_string(sb.rays_traced));
                return false;
            }
            if (f >= 10) {
                base_tail += sb.rays_traced;
                naive_tail += sn.rays_traced;
            }
        }
        if (std::string(scene) == "armadillo-analog") {
            const double ratio = static_cast<double>(naive_tail) / static_cast<double>(base_tail);
            std::cout << "    armadillo naive/baseline ratio over frames 10-99: " << ratio << "\n";
            expect(ratio <= 0.6, "armadillo naive <= 0.6 x baseline over frames 10-99");
        }
    }
    return checks_failed == 0;
}

// --- criterion 8: error-bound drift ---------------------------------------
double max_energy_deviation(const Engine& engine) {
    double worst = 0.0;
    const Scene& scene = engine.scene();
    for (uint32_t p = 0; p < engine.total_paths(); ++p) {
        if (!engine.path_alive(p)) continue;
        const Vec3 flux = engine.flux_per_path(engine.light_of_path(p));
        double e[3] = {flux.x, flux.y, flux.z};
        for (uint32_t b = 0; b < engine.photon_count(p); ++b) {
            const Photon& ph = engine.photon_map().at(b, p);
            const Vec3 albedo = scene.objects[ph.object_id].material.albedo;
            e[0] *= albedo.x;
            e[1] *= albedo.y;
            e[2] *= albedo.z;
            for (int ch = 0; ch < 3; ++ch) {
                if (e[ch] <= 1e-12) continue;
                worst = std::max(worst, std::abs(ph.energy[ch] - e[ch]) / e[ch]);
            }
        }
    }
    return worst;
}

bool criterion_8() {
    {
        EngineConfig cfg = base_config(EngineMode::ErrorBased, 10000);
        cfg.threshold = 0.0f;
        Engine engine(make_builtin_scene("moving-cube"), cfg);
        for (int f = 0; f < 20; ++f) {
            engine.run_frame();
            const double dev = max_energy_deviation(engine);
            if (dev > 1e-5) {
                expect(false, "T=0 frame " + std::to_string(f) + " deviation " +
                                  std::to_string(dev));
                return false;
            }
        }
    }
    {
        Engine engine(make_builtin_scene("moving-cube"),
                      base_config(EngineMode::ErrorBased, 10000));
        double worst = 0.0;
        for (int f = 0; f < 100; ++f) {
            engine.run_frame();
            worst = std::max(worst, max_energy_deviation(engine));
        }
        std::cout << "    T=0.001 max relative deviation over 100 frames: " << worst << "\n";
        expect(worst <= std::pow(1.001, 7) - 1.0, "T=0.001 drift within (1.001)^7 - 1");
    }
    return checks_failed == 0;
}

// --- criterion 9: DM convergence ------------------------------------------
bool criterion_9() {
    Engine engine(make_builtin_scene("parallel-spot"), base_config(EngineMode::Naive, 100000));
    for (int f = 0; f <= 22; ++f) engine.run_frame();

    const DistributionMap& dm_c = engine.dm_current(0);
    const DistributionMap& dm_t = engine.dm_target(0);
    expect(dm_c.total() == dm_t.total(), "sum DM_C == sum DM_T exactly");
    for (size_t c = 0; c < dm_c.counts.size(); ++c) {
        const double bound = 4.0 * std::sqrt(static_cast<double>(dm_t.counts[c]));
        expect(std::abs(static_cast<double>(dm_c.counts[c]) -
                        static_cast<double>(dm_t.counts[c])) <= bound,
               "cell " + std::to_string(c) + " within the binomial bound");
    }

    // Chi-square of the actual emitted-origin distribution against DM_T,
    // recomputed from the live paths rather than read back from DM_C.
    std::vector<uint32_t> observed(dm_t.counts.size(), 0);
    uint64_t live = 0;
    const Light& light = engine.scene().lights[0];
    const LightPose pose = light_pose_at(light, 22);
    for (uint32_t p = 0; p < engine.total_paths(); ++p) {
        if (!engine.path_alive(p)) continue;
        const auto cell = parametrise(light, pose, engine.dm_layout(0), engine.path_origin(p),
                                      engine.path_emission_dir(p));
        if (!cell) {
            expect(false, "live path fails to parametrise");
            return false;
        }
        ++observed[*cell];
        ++live;
    }
    expect(live == dm_t.total(), "every target slot holds a live path");

    double chi2 = 0.0;
    int df = -1;
    for (size_t c = 0; c < dm_t.counts.size(); ++c) {
        if (dm_t.counts[c] == 0) {
            expect(observed[c] == 0, "no emission from zero-target cells");
            continue;
        }
        const double exp_c = static_cast<double>(dm_t.counts[c]);
        const double diff = static_cast<double>(observed[c]) - exp_c;
        chi2 += diff * diff / exp_c;
        ++df;
    }
    // Wilson-Hilferty upper quantile at alpha = 0.01.
    const double z = 2.3263478740;
    const double dd = static_cast<double>(df);
    const double crit = dd * std::pow(1.0 - 2.0 / (9.0 * dd) + z * std::sqrt(2.0 / (9.0 * dd)), 3.0);
    std::cout << "    chi-square " << chi2 << " vs critical " << crit << " (df " << df << ")\n";
    expect(chi2 <= crit, "chi-square within the alpha = 0.01 critical value");
    return checks_failed == 0;
}

// --- criterion 10: prune statistics ---------------------------------------
bool criterion_10() {
    std::vector<uint32_t> paths(1000);
    for (uint32_t p = 0; p < 1000; ++p) paths[p] = p;
    double sum = 0.0;
    int within = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        const auto pruned =
            select_paths_to_prune(paths, 1000, 600, static_cast<uint64_t>(t) + 1, 0);
        const double n = static_cast<double>(pruned.size());
        sum += n;
        if (std::abs(n - 400.0) <= 62.0) ++within;
    }
    const double mean = sum / trials;
    std::cout << "    mean pruned " << mean << ", within +-62: " << within << "/" << trials
              << "\n";
    expect(mean >= 390.0 && mean <= 410.0, "mean pruned in [390, 410]");
    expect(within >= static_cast<int>(0.99 * trials), ">= 99% of trials within +-62");
    return checks_failed == 0;
}

// --- criterion 11: determinism across worker counts -----------------------
bool criterion_11() {
    EngineConfig c1 = base_config(EngineMode::ErrorBased, 20000);
    c1.workers = 1;
    EngineConfig c8 = c1;
    c8.workers = 8;
    Engine e1(make_builtin_scene("moving-cube"), c1);
    Engine e8(make_builtin_scene("moving-cube"), c8);
    std::vector<FrameStats> rows1, rows8;
    for (int f = 0; f < 6; ++f) {
        FrameStats s1 = e1.run_frame();
        FrameStats s8 = e8.run_frame();
        s1.t_update = s1.t_occlusion = s1.t_dm = s1.t_prune = s1.t_fill = s1.t_trace =
            s1.t_gather = 0.0;
        s8.t_update = s8.t_occlusion = s8.t_dm = s8.t_prune = s8.t_fill = s8.t_trace =
            s8.t_gather = 0.0;
        rows1.push_back(s1);
        rows8.push_back(s8);
        const Image i1 = gather_image(e1.scene_state(), e1.photon_map(), e1.vertex_aux(),
                                      e1.scene().camera, c1.gather_radius, 1);
        const Image i8 = gather_image(e8.scene_state(), e8.photon_map(), e8.vertex_aux(),
                                      e8.scene().camera, c8.gather_radius, 8);
        expect(image_bytes(i1) == image_bytes(i8),
               "frame " + std::to_string(f) + " images identical");
    }
    std::ostringstream csv1, csv8;
    write_stats_csv(rows1, csv1);
    write_stats_csv(rows8, csv8);
    expect(csv1.str() == csv8.str(), "stats CSV identical excluding timing");
    return checks_failed == 0;
}

// --- criterion 12: PathInfo round trip ------------------------------------
bool criterion_12() {
    static_assert(sizeof(uint32_t) == 4);
    static_assert(sizeof(Photon) == 32);
    std::mt19937 rng(17);
    std::uniform_int_distribution<uint32_t> cell_dist(0, (1u << 22) - 1);
    std::vector<uint32_t> cells;
    for (int i = 0; i < 1024; ++i) cells.push_back(cell_dist(rng));
    for (uint32_t cell : cells) {
        for (uint32_t seg = 1; seg <= 16; ++seg) {
            for (uint32_t start = 0; start <= 15; ++start) {
                for (int flags = 0; flags < 4; ++flags) {
                    const PathInfoFields f{cell, seg, start, (flags & 1) != 0, (flags & 2) != 0};
                    if (!(decode_path_info(encode_path_info(f)) == f)) {
                        expect(false, "round trip failed");
                        return false;
                    }
                }
            }
        }
    }
    return checks_failed == 0;
}

struct Criterion {
    int id;
    const char* name;
    bool (*fn)();
};

const Criterion kCriteria[] = {
    {1, "Eq. 1 unit suite", criterion_1},
    {2, "Eq. 2 unit suite", criterion_2},
    {3, "Table 1 memory reproduction", criterion_3},
    {4, "static full reuse", criterion_4},
    {5, "naive prefix preservation", criterion_5},
    {6, "conservativeness oracle", criterion_6},
    {7, "never-worse ray ordering", criterion_7},
    {8, "error-bound drift", criterion_8},
    {9, "DM convergence", criterion_9},
    {10, "prune statistics", criterion_10},
    {11, "worker-count determinism", criterion_11},
    {12, "PathInfo round trip", criterion_12},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), c.id) == selected.end())
            continue;
        checks_failed = 0;
        bool ok = false;
        try {
            ok = c.fn() && checks_failed == 0;
        } catch (const std::exception& e) {
            std::cout << "    exception: " << e.what() << "\n";
        }
        std::cout << "criterion " << c.id << " (" << c.name << "): " << (ok ? "PASS" : "FAIL")
                  << std::endl;
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
