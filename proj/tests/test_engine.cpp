#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <random>

#include "doctest.h"
#include "pathreuse/engine.hpp"

using namespace pathreuse;

namespace {

EngineConfig small_config(EngineMode mode, uint32_t paths = 5000) {
    EngineConfig cfg;
    cfg.mode = mode;
    cfg.n_paths = paths;
    cfg.max_bounces = 7;
    cfg.dm_dims = {1, 1, 8, 8};
    cfg.seed = 11;
    cfg.workers = 2;
    return cfg;
}

bool same_photons(const Engine& a, const Engine& b) {
    return std::memcmp(a.photon_map().records().data(), b.photon_map().records().data(),
                       a.photon_map().records().size() * sizeof(Photon)) == 0;
}

bool same_counts(const FrameStats& a, const FrameStats& b) {
    return a.rays_traced == b.rays_traced && a.rays_reused == b.rays_reused &&
           a.paths_replaced == b.paths_replaced && a.paths_pruned == b.paths_pruned &&
           a.paths_filled == b.paths_filled && a.visibility_rays == b.visibility_rays;
}

}  // namespace

TEST_CASE("energies_close against a direct oracle") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<float> ue(0.0f, 10.0f);
    std::uniform_real_distribution<float> ut(0.0f, 0.1f);
    for (int i = 0; i < 100000; ++i) {
        const Vec3 a{ue(rng), ue(rng), ue(rng)};
        Vec3 b = a;
        b.x += (ue(rng) - 5.0f) * 0.01f;
        b.y += (ue(rng) - 5.0f) * 0.001f;
        const float t = ut(rng);
        bool expect = true;
        for (int ch = 0; ch < 3; ++ch) {
            if (!(-t * a[ch] <= b[ch] - a[ch] && b[ch] - a[ch] <= t * a[ch])) expect = false;
        }
        CHECK(energies_close(a, b, t) == expect);
    }
}

TEST_CASE("cold start fills every path and reuses nothing") {
    Engine engine(make_builtin_scene("moving-cube"), small_config(EngineMode::Naive));
    const FrameStats s = engine.run_frame();
    CHECK(s.frame == 0);
    CHECK(s.paths_filled == engine.total_paths());
    CHECK(s.paths_pruned == 0);
    CHECK(s.paths_replaced == 0);
    CHECK(s.rays_reused == 0);
    CHECK(s.rays_traced > 0);
    CHECK(engine.dm_current(0).total() == engine.dm_target(0).total());
    for (uint32_t p = 0; p < engine.total_paths(); ++p) {
        CHECK(engine.path_alive(p));
        CHECK(engine.path_epoch(p) == 1);
    }
}

TEST_CASE("frame zero matches the baseline bitwise in every mode") {
    Engine base(make_builtin_scene("moving-cube"), small_config(EngineMode::Baseline));
    Engine naive(make_builtin_scene("moving-cube"), small_config(EngineMode::Naive));
    Engine error(make_builtin_scene("moving-cube"), small_config(EngineMode::ErrorBased));
    const FrameStats sb = base.run_frame();
    const FrameStats sn = naive.run_frame();
    const FrameStats se = error.run_frame();
    CHECK(same_counts(sb, sn));
    CHECK(same_counts(sb, se));
    CHECK(same_photons(base, naive));
    CHECK(same_photons(base, error));
}

TEST_CASE("static scene reaches a reuse fixpoint") {
    for (const EngineMode mode : {EngineMode::Naive, EngineMode::ErrorBased}) {
        CAPTURE(static_cast<int>(mode));
        Engine engine(make_builtin_scene("static-box"), small_config(mode));
        engine.run_frame();
        std::vector<Photon> snapshot = engine.photon_map().records();
        for (int f = 1; f < 4; ++f) {
            const FrameStats s = engine.run_frame();
            CHECK(s.rays_traced == 0);
            CHECK(s.paths_pruned == 0);
            CHECK(s.paths_filled == 0);
            CHECK(s.visibility_rays == 0);
            CHECK(std::memcmp(snapshot.data(), engine.photon_map().records().data(),
                              snapshot.size() * sizeof(Photon)) == 0);
        }
    }
}

TEST_CASE("stored paths are geometrically connected") {
    Engine engine(make_builtin_scene("merry-go-round-analog"), small_config(EngineMode::Naive));
    for (int f = 0; f < 3; ++f) engine.run_frame();
    for (uint32_t p = 0; p < engine.total_paths(); ++p) {
        if (!engine.path_alive(p)) continue;
        const uint32_t k = engine.photon_count(p);
        for (uint32_t b = 0; b < engine.config().max_bounces; ++b) {
            CHECK(engine.photon_map().at(b, p).live() == (b < k));
        }
        for (uint32_t b = 0; b < k; ++b) {
            // incoming direction matches the chord from the previous vertex
            const Vec3 from = engine.segment_origin(p, b);
            const Vec3 to = engine.aux_at(b, p).position;
            const Vec3 chord = normalized(to - from);
            const Vec3 stored = engine.photon_map().at(b, p).incoming_dir;
            CHECK(dot(chord, stored) == doctest::Approx(1.0f).epsilon(1e-3));
            CHECK(length(engine.aux_at(b, p).outgoing) == doctest::Approx(1.0f).epsilon(1e-4));
        }
    }
}

TEST_CASE("stored energies follow the albedo product chain") {
    Engine engine(make_builtin_scene("moving-cube"), small_config(EngineMode::Naive));
    for (int f = 0; f < 4; ++f) engine.run_frame();
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
                CHECK(ph.energy[ch] == doctest::Approx(static_cast<float>(e[ch])).epsilon(1e-5));
            }
        }
    }
}

TEST_CASE("ray accounting: traced plus reused equals stored segments") {
    Engine engine(make_builtin_scene("moving-cube"), small_config(EngineMode::ErrorBased));
    for (int f = 0; f < 5; ++f) {
        const FrameStats s = engine.run_frame();
        uint64_t segments = 0;
        for (uint32_t p = 0; p < engine.total_paths(); ++p) {
            if (engine.path_alive(p)) segments += engine.segment_count(p);
        }
        CHECK(s.rays_traced + s.rays_reused == segments);
    }
}

TEST_CASE("mode ordering on a dynamic scene") {
    Engine base(make_builtin_scene("moving-cube"), small_config(EngineMode::Baseline));
    Engine naive(make_builtin_scene("moving-cube"), small_config(EngineMode::Naive));
    Engine error(make_builtin_scene("moving-cube"), small_config(EngineMode::ErrorBased));
    for (int f = 0; f < 10; ++f) {
        const FrameStats sb = base.run_frame();
        const FrameStats sn = naive.run_frame();
        const FrameStats se = error.run_frame();
        CHECK(se.rays_traced <= sn.rays_traced);
        CHECK(sn.rays_traced <= sb.rays_traced);
        CHECK(sb.rays_reused == 0);
    }
}

TEST_CASE("naive retraces preserve the path prefix") {
    Engine engine(make_builtin_scene("moving-cube"), small_config(EngineMode::Naive));
    engine.run_frame();
    for (int f = 1; f < 4; ++f) {
        std::vector<Photon> before = engine.photon_map().records();
        std::vector<uint32_t> epoch_before(engine.total_paths());
        for (uint32_t p = 0; p < engine.total_paths(); ++p) epoch_before[p] = engine.path_epoch(p);
        engine.run_frame();
        for (uint32_t p = 0; p < engine.total_paths(); ++p) {
            if (!engine.path_alive(p)) continue;
            if (engine.path_epoch(p) != epoch_before[p]) continue;  // regenerated
            const uint8_t start = engine.last_retrace_start(p);
            const uint32_t keep = start == kNoRetrace ? engine.photon_count(p) : start;
            for (uint32_t b = 0; b < keep; ++b) {
                const Photon& now = engine.photon_map().at(b, p);
                const Photon& then = before[engine.photon_map().flat_index(b, p)];
                CHECK(std::memcmp(&now, &then, sizeof(Photon)) == 0);
            }
        }
    }
}

TEST_CASE("distribution map is exactly on target after every fill") {
    EngineConfig cfg = small_config(EngineMode::Naive, 20000);
    Engine engine(make_builtin_scene("parallel-spot"), cfg);
    for (int f = 0; f < 8; ++f) {
        engine.run_frame();
        const DistributionMap& dm_c = engine.dm_current(0);
        const DistributionMap& dm_t = engine.dm_target(0);
        REQUIRE(dm_c.counts.size() == dm_t.counts.size());
        for (size_t c = 0; c < dm_c.counts.size(); ++c) CHECK(dm_c.counts[c] == dm_t.counts[c]);
        // dm_c mirrors the live-path emission cells
        std::vector<uint32_t> observed(dm_c.counts.size(), 0);
        for (uint32_t p = 0; p < engine.total_paths(); ++p) {
            if (engine.path_alive(p)) ++observed[engine.path_cell(p)];
        }
        CHECK(observed == dm_c.counts);
    }
}

TEST_CASE("bitwise determinism across worker counts") {
    for (const char* scene : {"moving-cube", "parallel-spot"}) {
        CAPTURE(scene);
        EngineConfig c1 = small_config(EngineMode::ErrorBased);
        c1.workers = 1;
        EngineConfig c8 = c1;
        c8.workers = 8;
        Engine e1(make_builtin_scene(scene), c1);
        Engine e8(make_builtin_scene(scene), c8);
        for (int f = 0; f < 5; ++f) {
            const FrameStats s1 = e1.run_frame();
            const FrameStats s8 = e8.run_frame();
            CHECK(same_counts(s1, s8));
            CHECK(same_photons(e1, e8));
            CHECK(e1.path_info_words() == e8.path_info_words());
        }
    }
}

TEST_CASE("path info words mirror the path state") {
    Engine engine(make_builtin_scene("parallel-spot"), small_config(EngineMode::Naive));
    for (int f = 0; f < 3; ++f) engine.run_frame();
    for (uint32_t p = 0; p < engine.total_paths(); ++p) {
        if (!engine.path_alive(p)) continue;
        const PathInfoFields f = decode_path_info(engine.path_info_words()[p]);
        CHECK(f.cell == engine.path_cell(p));
        CHECK(f.seg_count == std::max(1u, engine.segment_count(p)));
        CHECK(!f.replace);
    }
}

TEST_CASE("configuration validation") {
    const Scene scene = make_builtin_scene("static-box");
    EngineConfig cfg = small_config(EngineMode::Naive);
    cfg.n_paths = 0;
    CHECK_THROWS_AS(Engine(scene, cfg), std::invalid_argument);
    cfg = small_config(EngineMode::Naive);
    cfg.max_bounces = 17;
    CHECK_THROWS_AS(Engine(scene, cfg), std::invalid_argument);
    cfg = small_config(EngineMode::Naive);
    cfg.dm_dims = {8, 8};
    CHECK_THROWS_AS(Engine(scene, cfg), std::invalid_argument);
}
