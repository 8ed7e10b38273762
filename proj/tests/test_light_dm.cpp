#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "pathreuse/engine.hpp"
#include "pathreuse/light.hpp"

using namespace pathreuse;

namespace {

std::mt19937 rng(777);

float urand() { return std::uniform_real_distribution<float>(0.0f, 1.0f)(rng); }

LightPose tilted_pose() {
    LightPose pose;
    pose.position = {1.0f, 3.0f, -2.0f};
    // A rotated frame: normal toward -y with a twist.
    const Quat q = Quat::from_axis_angle(normalized(Vec3{1, 0, 1}), 2.1f);
    pose.normal = rotate(q, {0, 0, 1});
    pose.tangent = rotate(q, {1, 0, 0});
    pose.bitangent = rotate(q, {0, 1, 0});
    pose.scale = 1.0f;
    return pose;
}

std::vector<Light> all_kinds() {
    Light point;
    point.kind = LightKind::Point;
    point.flux = {100, 100, 100};

    Light spot;
    spot.kind = LightKind::Spot;
    spot.flux = {100, 90, 80};
    spot.cone_angle_deg = 70.0f;

    Light disc;
    disc.kind = LightKind::DiscArea;
    disc.flux = {50, 50, 50};
    disc.radius = 0.8f;

    Light rect;
    rect.kind = LightKind::RectArea;
    rect.flux = {50, 50, 50};
    rect.half_x = 0.6f;
    rect.half_y = 0.3f;

    return {point, spot, disc, rect};
}

DmLayout layout_for(const Light& light) {
    if (light.param_dims() == 4) return DmLayout{{4, 4, 8, 8}};
    return DmLayout{{8, 8}};
}

}  // namespace

TEST_CASE("prune probability exact values") {
    CHECK(prune_probability(4, 2) == 0.5);
    CHECK(prune_probability(7, 7) == 0.0);
    CHECK(prune_probability(10, 0) == 1.0);
    CHECK(prune_probability(0, 5) == 0.0);
    CHECK(prune_probability(3, 9) == 0.0);
}

TEST_CASE("warp/canonical round trip per light kind") {
    const LightPose pose = tilted_pose();
    for (const Light& light : all_kinds()) {
        for (int i = 0; i < 5000; ++i) {
            CanonicalCoords cc;
            cc.dims = light.param_dims();
            for (int a = 0; a < cc.dims; ++a) cc.c[a] = urand() * 0.998f + 0.001f;
            const EmissionSample es = warp_canonical(light, pose, cc);
            CHECK(length(es.dir) == doctest::Approx(1.0f).epsilon(1e-4));
            const auto back = canonical_of(light, pose, es.origin, es.dir);
            REQUIRE(back.has_value());
            for (int a = 0; a < cc.dims; ++a) {
                CHECK(back->c[a] == doctest::Approx(cc.c[a]).epsilon(5e-3));
            }
        }
    }
}

TEST_CASE("directions outside the emission domain do not parametrise") {
    const LightPose pose = tilted_pose();
    Light spot;
    spot.kind = LightKind::Spot;
    spot.cone_angle_deg = 40.0f;
    // Opposite the cone axis.
    CHECK(!canonical_of(spot, pose, pose.position, -pose.normal).has_value());

    Light disc;
    disc.kind = LightKind::DiscArea;
    disc.radius = 0.5f;
    // Behind the emitting plane.
    CHECK(!canonical_of(disc, pose, pose.position, -pose.normal).has_value());
    // Off the surface.
    CHECK(!canonical_of(disc, pose, pose.position + pose.tangent * 2.0f, pose.normal).has_value());
}

TEST_CASE("cell domains tile the canonical space") {
    const DmLayout layout{{3, 4, 5}};
    const int dims = 3;
    std::vector<CellDomain> domains;
    for (uint32_t c = 0; c < layout.total_cells(); ++c) domains.push_back(cell_domain(layout, c));
    CHECK_THROWS_AS(cell_domain(layout, layout.total_cells()), std::out_of_range);

    // Every random canonical point lies in exactly one cell domain, and that
    // cell equals cell_of_canonical.
    for (int i = 0; i < 20000; ++i) {
        CanonicalCoords cc;
        cc.dims = dims;
        for (int a = 0; a < dims; ++a) cc.c[a] = urand();
        int owner = -1;
        for (uint32_t c = 0; c < layout.total_cells(); ++c) {
            bool inside = true;
            for (int a = 0; a < dims; ++a) {
                const bool last = domains[c].hi[a] == 1.0f;
                if (cc.c[a] < domains[c].lo[a] || cc.c[a] >= domains[c].hi[a]) {
                    if (!(last && cc.c[a] == 1.0f)) inside = false;
                }
            }
            if (inside) {
                CHECK(owner == -1);
                owner = static_cast<int>(c);
            }
        }
        REQUIRE(owner >= 0);
        CHECK(cell_of_canonical(layout, cc) == static_cast<uint32_t>(owner));
    }
}

TEST_CASE("in-cell sampling parametrises back to the same cell") {
    const LightPose pose = tilted_pose();
    for (const Light& light : all_kinds()) {
        const DmLayout layout = layout_for(light);
        const uint32_t cells = layout.total_cells();
        int trials = 0;
        for (uint32_t i = 0; i < 25000; ++i) {
            const uint32_t cell = i % cells;
            CanonicalCoords cc;
            const EmissionSample es = sample_in_cell(light, pose, layout, cell, 99,
                                                     RngKey{i, 0, 0, RngPurpose::Emission, 0}, &cc);
            CHECK(cell_of_canonical(layout, cc) == cell);
            const auto got = parametrise(light, pose, layout, es.origin, es.dir);
            REQUIRE(got.has_value());
            CHECK(*got == cell);
            ++trials;
        }
        CHECK(trials == 25000);
    }
}

TEST_CASE("target distribution map bins every sample and stays near uniform") {
    Light point;
    point.kind = LightKind::Point;
    const DmLayout layout{{8, 8}};
    const uint32_t n = 64000;
    const DistributionMap dm = init_dm_target(point, layout, n, 7);
    CHECK(dm.total() == n);
    // Uniform sphere emission -> each of the 64 CDF-space cells is equally
    // likely; allow 5 sigma of binomial noise around n/64 = 1000.
    const double sigma = std::sqrt(n * (1.0 / 64) * (63.0 / 64));
    for (uint32_t c = 0; c < 64; ++c) {
        CHECK(std::abs(static_cast<double>(dm.counts[c]) - 1000.0) < 5.0 * sigma);
    }
    // Deterministic in the seed.
    const DistributionMap again = init_dm_target(point, layout, n, 7);
    CHECK(again.counts == dm.counts);
}

TEST_CASE("spot emission stays inside the cone") {
    const LightPose pose = tilted_pose();
    Light spot;
    spot.kind = LightKind::Spot;
    spot.cone_angle_deg = 50.0f;
    const float cos_half = std::cos(50.0f * static_cast<float>(M_PI) / 360.0f);
    for (int i = 0; i < 10000; ++i) {
        CanonicalCoords cc;
        cc.dims = 2;
        cc.c[0] = urand();
        cc.c[1] = urand();
        const EmissionSample es = warp_canonical(spot, pose, cc);
        CHECK(dot(es.dir, pose.normal) >= cos_half - 1e-4f);
    }
}

TEST_CASE("prune selection hits the target exactly and ignores input order") {
    std::vector<uint32_t> paths;
    for (uint32_t p = 0; p < 1000; ++p) paths.push_back(p);
    const auto a = select_paths_to_prune(paths, 1000, 600, 5, 3);
    CHECK(a.size() >= 400);  // survivors trimmed to exactly the target
    std::shuffle(paths.begin(), paths.end(), rng);
    const auto b = select_paths_to_prune(paths, 1000, 600, 5, 3);
    CHECK(a == b);
    // No pruning when at the target.
    std::vector<uint32_t> exact(paths.begin(), paths.begin() + 600);
    CHECK(select_paths_to_prune(exact, 600, 600, 5, 3).empty());
}

TEST_CASE("light pose interpolates between keyframes") {
    Light light;
    light.kind = LightKind::Point;
    light.keyframes.push_back({0, RigidTransform::translate({0, 0, 0})});
    light.keyframes.push_back({10, RigidTransform::translate({10, 0, 0})});
    CHECK(light_pose_at(light, 0).position.x == doctest::Approx(0.0f));
    CHECK(light_pose_at(light, 5).position.x == doctest::Approx(5.0f));
    CHECK(light_pose_at(light, 10).position.x == doctest::Approx(10.0f));
    CHECK(light_pose_at(light, 25).position.x == doctest::Approx(10.0f));  // clamped
}

TEST_CASE("light validation rejects bad parameters") {
    Light spot;
    spot.kind = LightKind::Spot;
    spot.cone_angle_deg = 0.0f;
    CHECK_THROWS_AS(validate_light(spot), std::invalid_argument);
    spot.cone_angle_deg = 185.0f;
    CHECK_THROWS_AS(validate_light(spot), std::invalid_argument);

    Light disc;
    disc.kind = LightKind::DiscArea;
    disc.radius = -1.0f;
    CHECK_THROWS_AS(validate_light(disc), std::invalid_argument);
}
