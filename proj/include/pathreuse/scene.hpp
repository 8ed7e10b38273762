#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathreuse/bvh.hpp"
#include "pathreuse/geometry.hpp"
#include "pathreuse/light.hpp"
#include "pathreuse/transform.hpp"

namespace pathreuse {

enum class MaterialKind { Diffuse, Glossy };

struct Material {
    MaterialKind kind = MaterialKind::Diffuse;
    Vec3 albedo{0.5f, 0.5f, 0.5f};  // per channel in [0, 1]
    float glossy_exponent = 1.0f;   // glossy only, >= 1
};

struct ObjectKeyframe {
    int frame = 0;
    RigidTransform xf;
};

struct SceneObject {
    uint32_t id = 0;  // dense 0..N-1, stable across frames
    std::string name;
    std::vector<Triangle> mesh;  // object-local space
    Material material;
    std::vector<ObjectKeyframe> keyframes;
    bool dynamic = false;  // true iff >= 2 distinct keyframe transforms
    Aabb local_bounds;
};

struct Camera {
    Vec3 position{0, 1, 4};
    Vec3 look_at{0, 1, 0};
    float fov_deg = 60.0f;  // vertical
    uint32_t width = 120;
    uint32_t height = 90;
};

struct Scene {
    std::vector<SceneObject> objects;
    std::vector<Light> lights;
    Camera camera;
    int frames = 1;

    // Built once at finalize: world-space static geometry.
    std::shared_ptr<const Bvh> static_bvh;
    std::vector<Triangle> static_triangles;     // placed, permutation source for the BVH
    std::vector<uint32_t> static_triangle_obj;  // object id per static triangle
    Aabb world_bounds;                          // frame-0 bounds of everything

    float diagonal() const { return world_bounds.diagonal(); }
};

struct PlacedDynamic {
    uint32_t object_id = 0;
    std::vector<Triangle> triangles;  // world space at the current frame
    Aabb bounds_current;
    Aabb bounds_previous;  // equals bounds_current of frame-1 (frame 0: identical)
};

struct SceneState {
    int frame = 0;
    std::shared_ptr<const Bvh> static_bvh;
    const Scene* scene = nullptr;
    std::vector<PlacedDynamic> placed_dynamics;
};

struct SceneError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses and validates a scene document (JSON text, optionally referencing
/// ASCII OBJ meshes relative to the document). Unknown keys are errors.
Scene load_scene(const std::string& path);
Scene load_scene_text(const std::string& json_text, const std::string& base_dir);

/// Bundled generators for the experiment scenarios. Known names:
/// static-box, moving-cube, parallel-spot, merry-go-round-analog,
/// armadillo-analog, villa-analog (alias villa-torch).
Scene make_builtin_scene(const std::string& name);
bool is_builtin_scene(const std::string& name);

/// Resolves "builtin:NAME" or a filesystem path.
Scene load_scene_source(const std::string& source);

/// Validates invariants and builds the static BVH / world bounds. Called by
/// the loaders; call it directly for hand-assembled scenes.
void finalize_scene(Scene& scene);

SceneState state_at(const Scene& scene, int frame);

/// Nearest intersection across the static BVH and all placed dynamics.
std::optional<Hit> intersect_scene(const Ray& ray, const SceneState& state);

/// True if anything blocks the ray in (t_min, t_max).
bool occluded(const Ray& ray, const SceneState& state);

/// Axis-aligned unit-cube-style box mesh (12 triangles) with the given half
/// extents, centered at the origin.
std::vector<Triangle> make_box_mesh(const Vec3& half_extents);

}  // namespace pathreuse
