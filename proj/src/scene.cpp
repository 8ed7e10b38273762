#include "pathreuse/scene.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "pathreuse/animation.hpp"

namespace pathreuse {

using nlohmann::json;

std::vector<Triangle> make_box_mesh(const Vec3& h) {
    const Vec3 p000{-h.x, -h.y, -h.z}, p001{-h.x, -h.y, h.z}, p010{-h.x, h.y, -h.z},
        p011{-h.x, h.y, h.z}, p100{h.x, -h.y, -h.z}, p101{h.x, -h.y, h.z}, p110{h.x, h.y, -h.z},
        p111{h.x, h.y, h.z};
    return {
        {p000, p100, p101}, {p000, p101, p001},  // bottom
        {p010, p111, p110}, {p010, p011, p111},  // top
        {p000, p010, p110}, {p000, p110, p100},  // -z
        {p001, p101, p111}, {p001, p111, p011},  // +z
        {p000, p001, p011}, {p000, p011, p010},  // -x
        {p100, p110, p111}, {p100, p111, p101},  // +x
    };
}

namespace {

Quat quat_rotating_z_to(const Vec3& target) {
    const Vec3 z{0, 0, 1};
    const Vec3 t = normalized(target);
    const float c = dot(z, t);
    if (c > 1.0f - 1e-6f) return Quat::identity();
    if (c < -1.0f + 1e-6f) return Quat::from_axis_angle({1, 0, 0}, std::numbers::pi_v<float>);
    return Quat::from_axis_angle(cross(z, t), std::acos(c)).normalized();
}

void validate_material(const Material& m, const std::string& where) {
    for (int ch = 0; ch < 3; ++ch) {
        const float a = m.albedo[ch];
        if (!(a >= 0.0f && a <= 1.0f))
            throw SceneError(where + ": albedo channels must lie in [0, 1]");
    }
    if (m.kind == MaterialKind::Glossy && m.glossy_exponent < 1.0f)
        throw SceneError(where + ": glossy_exponent must be >= 1");
}

void validate_keyframes(const std::vector<ObjectKeyframe>& kfs, const std::string& where) {
    for (size_t i = 0; i < kfs.size(); ++i) {
        if (std::fabs(kfs[i].xf.rotation.norm() - 1.0f) > 1e-5f)
            throw SceneError(where + ": keyframe rotation is not a unit quaternion");
        if (kfs[i].xf.scale <= 0.0f) throw SceneError(where + ": keyframe scale must be > 0");
        if (i > 0 && kfs[i].frame <= kfs[i - 1].frame)
            throw SceneError(where + ": keyframe frames must be strictly increasing");
    }
}

}  // namespace

void finalize_scene(Scene& scene) {
    if (scene.objects.empty()) throw SceneError("scene: needs at least one object");
    if (scene.lights.empty()) throw SceneError("scene: needs at least one light");
    if (scene.camera.width < 1 || scene.camera.height < 1)
        throw SceneError("scene: camera resolution must be >= 1");
    if (!(scene.camera.fov_deg > 0.0f && scene.camera.fov_deg < 180.0f))
        throw SceneError("scene: camera fov must be in (0, 180)");

    for (size_t i = 0; i < scene.objects.size(); ++i) {
        auto& obj = scene.objects[i];
        obj.id = static_cast<uint32_t>(i);
        const std::string where = "object '" + obj.name + "'";
        if (obj.mesh.empty()) throw SceneError(where + ": empty mesh");
        validate_material(obj.material, where);
        if (obj.keyframes.empty()) obj.keyframes.push_back({0, RigidTransform::identity()});
        validate_keyframes(obj.keyframes, where);
        obj.dynamic = has_distinct_transforms(std::span<const ObjectKeyframe>(obj.keyframes));
        obj.local_bounds = Aabb{};
        for (const auto& tri : obj.mesh) {
            if (tri.area() < 1e-10f) throw SceneError(where + ": degenerate triangle in mesh");
            obj.local_bounds.expand(tri.bounds());
        }
    }
    for (auto& light : scene.lights) {
        if (light.keyframes.empty()) light.keyframes.push_back({0, RigidTransform::identity()});
        validate_light(light);
    }

    scene.static_triangles.clear();
    scene.static_triangle_obj.clear();
    scene.world_bounds = Aabb{};
    for (const auto& obj : scene.objects) {
        const RigidTransform xf0 =
            transform_at(std::span<const ObjectKeyframe>(obj.keyframes), 0);
        if (obj.dynamic) {
            scene.world_bounds.expand(transform_aabb(obj.local_bounds, xf0));
            continue;
        }
        for (const auto& tri : obj.mesh) {
            scene.static_triangles.push_back(transform_triangle(tri, xf0));
            scene.static_triangle_obj.push_back(obj.id);
            scene.world_bounds.expand(scene.static_triangles.back().bounds());
        }
    }
    if (!scene.static_triangles.empty())
        scene.static_bvh = std::make_shared<const Bvh>(Bvh::build(scene.static_triangles));
    else
        scene.static_bvh.reset();
    for (const auto& light : scene.lights)
        scene.world_bounds.expand(light_pose_at(light, 0).position);
}

SceneState state_at(const Scene& scene, int frame) {
    SceneState state;
    state.frame = frame;
    state.scene = &scene;
    state.static_bvh = scene.static_bvh;
    for (const auto& obj : scene.objects) {
        if (!obj.dynamic) continue;
        PlacedDynamic placed;
        placed.object_id = obj.id;
        const std::span<const ObjectKeyframe> kfs(obj.keyframes);
        const RigidTransform xf_now = transform_at(kfs, frame);
        const RigidTransform xf_prev = transform_at(kfs, frame > 0 ? frame - 1 : 0);
        placed.triangles.reserve(obj.mesh.size());
        for (const auto& tri : obj.mesh) placed.triangles.push_back(transform_triangle(tri, xf_now));
        placed.bounds_current = transform_aabb(obj.local_bounds, xf_now);
        placed.bounds_previous = transform_aabb(obj.local_bounds, xf_prev);
        state.placed_dynamics.push_back(std::move(placed));
    }
    return state;
}

std::optional<Hit> intersect_scene(const Ray& ray, const SceneState& state) {
    std::optional<Hit> best;
    Ray r = ray;

    if (state.static_bvh) {
        if (auto th = state.static_bvh->intersect(r)) {
            const Triangle& tri = state.scene->static_triangles[th->triangle];
            Hit hit;
            hit.t = th->t;
            hit.object_id = state.scene->static_triangle_obj[th->triangle];
            hit.triangle = th->triangle;
            hit.position = r.origin + r.dir * th->t;
            hit.normal = tri.geometric_normal();
            best = hit;
            r.t_max = th->t;
        }
    }
    for (const auto& placed : state.placed_dynamics) {
        if (!ray_intersects_aabb(r, placed.bounds_current)) continue;
        if (auto th = brute_force_intersect(r, placed.triangles)) {
            Hit hit;
            hit.t = th->t;
            hit.object_id = placed.object_id;
            hit.triangle = th->triangle;
            hit.position = r.origin + r.dir * th->t;
            hit.normal = placed.triangles[th->triangle].geometric_normal();
            best = hit;
            r.t_max = th->t;
        }
    }
    if (best && dot(best->normal, ray.dir) > 0.0f) best->normal = -best->normal;
    return best;
}

bool occluded(const Ray& ray, const SceneState& state) {
    if (state.static_bvh && state.static_bvh->intersect(ray)) return true;
    for (const auto& placed : state.placed_dynamics) {
        if (!ray_intersects_aabb(ray, placed.bounds_current)) continue;
        if (brute_force_intersect(ray, placed.triangles)) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Scene document parsing
// ---------------------------------------------------------------------------

namespace {

void reject_unknown_keys(const json& node, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (auto it = node.begin(); it != node.end(); ++it) {
        bool ok = false;
        for (const char* key : allowed)
            if (it.key() == key) ok = true;
        if (!ok) throw SceneError(where + ": unknown key '" + it.key() + "'");
    }
}

Vec3 parse_vec3(const json& node, const std::string& where) {
    if (!node.is_array() || node.size() != 3)
        throw SceneError(where + ": expected an array of 3 numbers");
    return {node[0].get<float>(), node[1].get<float>(), node[2].get<float>()};
}

template <typename Keyframe>
std::vector<Keyframe> parse_keyframes(const json& node, const std::string& where) {
    std::vector<Keyframe> out;
    for (size_t i = 0; i < node.size(); ++i) {
        const json& kf = node[i];
        const std::string kw = where + ".keyframes[" + std::to_string(i) + "]";
        reject_unknown_keys(kf, {"frame", "translation", "rotation", "scale"}, kw);
        Keyframe k;
        k.frame = kf.at("frame").get<int>();
        if (kf.contains("translation")) k.xf.translation = parse_vec3(kf["translation"], kw);
        if (kf.contains("rotation")) {
            const json& q = kf["rotation"];
            if (!q.is_array() || q.size() != 4)
                throw SceneError(kw + ": rotation expects [x, y, z, w]");
            k.xf.rotation = {q[0].get<float>(), q[1].get<float>(), q[2].get<float>(),
                             q[3].get<float>()};
        }
        if (kf.contains("scale")) k.xf.scale = kf["scale"].get<float>();
        out.push_back(k);
    }
    return out;
}

std::vector<Triangle> load_obj_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SceneError("missing mesh file: " + path);
    std::vector<Vec3> positions;
    std::vector<Triangle> tris;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "#") continue;
        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x >> p.y >> p.z))
                throw SceneError(path + ":" + std::to_string(line_no) + ": bad vertex");
            positions.push_back(p);
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string tok;
            while (ls >> tok) {
                // accept "i", "i/..", "i//.." forms, positions only
                idx.push_back(std::stoi(tok.substr(0, tok.find('/'))));
            }
            if (idx.size() < 3)
                throw SceneError(path + ":" + std::to_string(line_no) + ": face needs 3+ vertices");
            auto vertex = [&](int i) -> const Vec3& {
                const int v = i > 0 ? i - 1 : static_cast<int>(positions.size()) + i;
                if (v < 0 || v >= static_cast<int>(positions.size()))
                    throw SceneError(path + ":" + std::to_string(line_no) +
                                     ": face index out of range");
                return positions[static_cast<size_t>(v)];
            };
            for (size_t i = 2; i < idx.size(); ++i)
                tris.push_back({vertex(idx[0]), vertex(idx[i - 1]), vertex(idx[i])});
        } else {
            throw SceneError(path + ":" + std::to_string(line_no) +
                             ": unsupported OBJ statement '" + tag + "'");
        }
    }
    if (tris.empty()) throw SceneError(path + ": no faces");
    return tris;
}

Material parse_material(const json& node, const std::string& where) {
    reject_unknown_keys(node, {"kind", "albedo", "glossy_exponent"}, where);
    Material m;
    const std::string kind = node.at("kind").get<std::string>();
    if (kind == "diffuse")
        m.kind = MaterialKind::Diffuse;
    else if (kind == "glossy")
        m.kind = MaterialKind::Glossy;
    else
        throw SceneError(where + ": material kind must be 'diffuse' or 'glossy'");
    m.albedo = parse_vec3(node.at("albedo"), where + ".albedo");
    if (node.contains("glossy_exponent")) m.glossy_exponent = node["glossy_exponent"].get<float>();
    return m;
}

}  // namespace

Scene load_scene_text(const std::string& json_text, const std::string& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SceneError(std::string("scene parse error: ") + e.what());
    }
    reject_unknown_keys(doc, {"objects", "lights", "camera", "frames"}, "document");

    Scene scene;
    scene.frames = doc.value("frames", 1);

    const json& cam = doc.at("camera");
    reject_unknown_keys(cam, {"position", "look_at", "fov", "resolution"}, "camera");
    scene.camera.position = parse_vec3(cam.at("position"), "camera.position");
    scene.camera.look_at = parse_vec3(cam.at("look_at"), "camera.look_at");
    scene.camera.fov_deg = cam.at("fov").get<float>();
    const json& res = cam.at("resolution");
    if (!res.is_array() || res.size() != 2)
        throw SceneError("camera.resolution: expected [width, height]");
    scene.camera.width = res[0].get<uint32_t>();
    scene.camera.height = res[1].get<uint32_t>();

    for (size_t i = 0; i < doc.at("objects").size(); ++i) {
        const json& node = doc["objects"][i];
        const std::string where = "objects[" + std::to_string(i) + "]";
        reject_unknown_keys(node, {"name", "material", "mesh", "keyframes"}, where);
        SceneObject obj;
        obj.name = node.value("name", where);
        obj.material = parse_material(node.at("material"), where + ".material");

        const json& mesh = node.at("mesh");
        if (mesh.contains("obj")) {
            reject_unknown_keys(mesh, {"obj"}, where + ".mesh");
            std::string path = mesh["obj"].get<std::string>();
            if (!base_dir.empty() && !path.empty() && path[0] != '/')
                path = base_dir + "/" + path;
            obj.mesh = load_obj_mesh(path);
        } else {
            reject_unknown_keys(mesh, {"vertices", "faces"}, where + ".mesh");
            std::vector<Vec3> verts;
            for (const auto& v : mesh.at("vertices"))
                verts.push_back(parse_vec3(v, where + ".mesh.vertices"));
            for (const auto& f : mesh.at("faces")) {
                if (!f.is_array() || f.size() != 3)
                    throw SceneError(where + ".mesh.faces: expected index triples");
                const auto at = [&](size_t k) -> const Vec3& {
                    const auto idx = f[k].get<size_t>();
                    if (idx >= verts.size())
                        throw SceneError(where + ".mesh.faces: index out of range");
                    return verts[idx];
                };
                obj.mesh.push_back({at(0), at(1), at(2)});
            }
        }
        if (node.contains("keyframes"))
            obj.keyframes = parse_keyframes<ObjectKeyframe>(node["keyframes"], where);
        scene.objects.push_back(std::move(obj));
    }

    for (size_t i = 0; i < doc.at("lights").size(); ++i) {
        const json& node = doc["lights"][i];
        const std::string where = "lights[" + std::to_string(i) + "]";
        reject_unknown_keys(node,
                            {"kind", "flux", "cone_angle", "radius", "half_extents", "keyframes"},
                            where);
        Light light;
        const std::string kind = node.at("kind").get<std::string>();
        if (kind == "point")
            light.kind = LightKind::Point;
        else if (kind == "spot")
            light.kind = LightKind::Spot;
        else if (kind == "disc_area")
            light.kind = LightKind::DiscArea;
        else if (kind == "rect_area")
            light.kind = LightKind::RectArea;
        else
            throw SceneError(where + ": unknown light kind '" + kind + "'");
        light.flux = parse_vec3(node.at("flux"), where + ".flux");
        if (node.contains("cone_angle")) light.cone_angle_deg = node["cone_angle"].get<float>();
        if (node.contains("radius")) light.radius = node["radius"].get<float>();
        if (node.contains("half_extents")) {
            const json& he = node["half_extents"];
            if (!he.is_array() || he.size() != 2)
                throw SceneError(where + ".half_extents: expected [hx, hy]");
            light.half_x = he[0].get<float>();
            light.half_y = he[1].get<float>();
        }
        if (node.contains("keyframes"))
            light.keyframes = parse_keyframes<LightKeyframe>(node["keyframes"], where);
        scene.lights.push_back(std::move(light));
    }

    finalize_scene(scene);
    return scene;
}

Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SceneError("cannot open scene file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const auto slash = path.find_last_of('/');
    const std::string base_dir = slash == std::string::npos ? "" : path.substr(0, slash);
    return load_scene_text(buf.str(), base_dir);
}

Scene load_scene_source(const std::string& source) {
    constexpr std::string_view prefix = "builtin:";
    if (source.rfind(prefix, 0) == 0) return make_builtin_scene(source.substr(prefix.size()));
    if (is_builtin_scene(source)) return make_builtin_scene(source);
    return load_scene(source);
}

// ---------------------------------------------------------------------------
// Builtin scenes
// ---------------------------------------------------------------------------

namespace {

SceneObject box_object(const std::string& name, const Vec3& half, const Vec3& albedo,
                       std::vector<ObjectKeyframe> keyframes) {
    SceneObject obj;
    obj.name = name;
    obj.mesh = make_box_mesh(half);
    obj.material.albedo = albedo;
    obj.keyframes = std::move(keyframes);
    return obj;
}

ObjectKeyframe at_frame(int frame, const Vec3& pos, Quat rot = Quat::identity(),
                        float scale = 1.0f) {
    return {frame, {rot, pos, scale}};
}

Quat facing_down() {
    return Quat::from_axis_angle({1, 0, 0}, std::numbers::pi_v<float> / 2.0f);
}

void add_room(Scene& scene, const Vec3& half, const Vec3& center, const Vec3& albedo) {
    scene.objects.push_back(box_object("room", half, albedo, {at_frame(0, center)}));
}

Scene builtin_static_box() {
    Scene scene;
    scene.frames = 10;
    add_room(scene, {5, 3, 5}, {0, 3, 0}, {0.6f, 0.6f, 0.6f});
    scene.objects.push_back(
        box_object("block-a", {0.5f, 0.5f, 0.5f}, {0.7f, 0.3f, 0.3f}, {at_frame(0, {-1.5f, 0.5f, -1})}));
    scene.objects.push_back(
        box_object("block-b", {0.4f, 0.8f, 0.4f}, {0.3f, 0.3f, 0.7f}, {at_frame(0, {1.5f, 0.8f, 0.5f})}));
    Light light;
    light.kind = LightKind::Point;
    light.flux = {50, 50, 50};
    light.keyframes = {{0, {facing_down(), {0, 5, 0}, 1.0f}}};
    scene.lights.push_back(light);
    scene.camera = {{0, 2.5f, 4.5f}, {0, 1, 0}, 60.0f, 120, 90};
    finalize_scene(scene);
    return scene;
}

Scene builtin_moving_cube() {
    Scene scene;
    scene.frames = 100;
    add_room(scene, {5, 3, 5}, {0, 3, 0}, {0.6f, 0.6f, 0.6f});
    scene.objects.push_back(
        box_object("block", {0.6f, 0.6f, 0.6f}, {0.3f, 0.5f, 0.7f}, {at_frame(0, {1.8f, 0.6f, -1.2f})}));
    std::vector<ObjectKeyframe> cube_kfs;
    for (int i = 0; i <= 8; ++i)
        cube_kfs.push_back(at_frame(i * 25, {(i % 2 == 0) ? -2.5f : 2.5f, 1.0f, 0.5f}));
    scene.objects.push_back(box_object("cube", {0.3f, 0.3f, 0.3f}, {0.8f, 0.4f, 0.3f}, cube_kfs));
    Light light;
    light.kind = LightKind::RectArea;
    light.flux = {80, 80, 80};
    light.half_x = 0.8f;
    light.half_y = 0.8f;
    light.keyframes = {{0, {facing_down(), {0, 5.9f, 0}, 1.0f}}};
    scene.lights.push_back(light);
    scene.camera = {{0, 2.5f, 4.5f}, {0, 1, 0}, 60.0f, 120, 90};
    finalize_scene(scene);
    return scene;
}

Scene builtin_parallel_spot() {
    Scene scene;
    scene.frames = 30;
    scene.objects.push_back(
        box_object("ground", {8, 0.1f, 8}, {0.6f, 0.6f, 0.6f}, {at_frame(0, {0, -0.1f, 0})}));
    scene.objects.push_back(
        box_object("block", {0.5f, 0.5f, 0.5f}, {0.5f, 0.4f, 0.3f}, {at_frame(0, {0, 0.5f, -2})}));
    Light light;
    light.kind = LightKind::Spot;
    light.flux = {60, 60, 60};
    light.cone_angle_deg = 70.0f;
    light.keyframes = {{0, {facing_down(), {-2, 4, 0}, 1.0f}},
                       {20, {facing_down(), {2, 4, 0}, 1.0f}},
                       {2000, {facing_down(), {2, 4, 0}, 1.0f}}};
    scene.lights.push_back(light);
    scene.camera = {{0, 3, 7}, {0, 0.5f, 0}, 60.0f, 120, 90};
    finalize_scene(scene);
    return scene;
}

Scene builtin_armadillo_analog() {
    Scene scene;
    scene.frames = 200;
    add_room(scene, {6, 2, 4}, {0, 2, 0}, {0.6f, 0.6f, 0.6f});
    scene.objects.push_back(
        box_object("table", {1.5f, 0.45f, 0.8f}, {0.55f, 0.4f, 0.3f}, {at_frame(0, {0, 0.45f, 0})}));
    scene.objects.push_back(
        box_object("stand", {0.4f, 0.5f, 0.4f}, {0.45f, 0.45f, 0.5f}, {at_frame(0, {4, 0.5f, 2})}));
    std::vector<ObjectKeyframe> walk = {
        at_frame(0, {-5, 0.6f, -3}),  at_frame(40, {0, 0.6f, 2.5f}),
        at_frame(60, {0, 0.6f, 2.5f}), at_frame(100, {5, 0.6f, -3}),
        at_frame(140, {0, 0.6f, 2.5f}), at_frame(160, {0, 0.6f, 2.5f}),
        at_frame(200, {-5, 0.6f, -3}),
    };
    scene.objects.push_back(box_object("walker", {0.25f, 0.6f, 0.25f}, {0.4f, 0.45f, 0.5f}, walk));
    Light light;
    light.kind = LightKind::DiscArea;
    light.flux = {100, 100, 100};
    light.radius = 0.7f;
    light.keyframes = {{0, {facing_down(), {0, 3.95f, 0}, 1.0f}}};
    scene.lights.push_back(light);
    scene.camera = {{0, 2, 3.8f}, {0, 1, 0}, 70.0f, 120, 90};
    finalize_scene(scene);
    return scene;
}

Scene builtin_merry_go_round() {
    Scene scene;
    scene.frames = 200;
    add_room(scene, {5, 2.5f, 5}, {0, 2.5f, 0}, {0.6f, 0.6f, 0.6f});
    scene.objects.push_back(
        box_object("table", {1.8f, 0.4f, 1.8f}, {0.5f, 0.35f, 0.25f}, {at_frame(0, {0, 0.4f, 0})}));
    constexpr float kTau = 2.0f * std::numbers::pi_v<float>;
    for (int i = 0; i < 3; ++i) {
        std::vector<ObjectKeyframe> kfs;
        const float base = kTau * static_cast<float>(i) / 3.0f;
        for (int k = 0; k <= 10; ++k) {
            const int frame = k * 20;
            const float spin = kTau * static_cast<float>(k) / 4.0f;
            const float scale = (k % 2 == 0) ? 1.0f : 1.3f;
            const Vec3 pos{0.9f * std::cos(base), 1.05f, 0.9f * std::sin(base)};
            kfs.push_back(at_frame(frame, pos, Quat::from_axis_angle({0, 1, 0}, spin), scale));
        }
        scene.objects.push_back(
            box_object("teapot-" + std::to_string(i), {0.25f, 0.25f, 0.25f}, {0.7f, 0.7f, 0.75f}, kfs));
    }
    for (int i = 0; i < 8; ++i) {
        std::vector<ObjectKeyframe> kfs;
        const float base = kTau * static_cast<float>(i) / 8.0f;
        for (int k = 0; k <= 20; ++k) {
            const int frame = k * 10;
            const float angle = base + kTau * static_cast<float>(frame) / 200.0f;
            kfs.push_back(at_frame(frame, {3.0f * std::cos(angle), 0.3f, 3.0f * std::sin(angle)}));
        }
        scene.objects.push_back(
            box_object("bunny-" + std::to_string(i), {0.2f, 0.3f, 0.2f}, {0.75f, 0.7f, 0.65f}, kfs));
    }
    Light light;
    light.kind = LightKind::DiscArea;
    light.flux = {120, 120, 120};
    light.radius = 0.6f;
    light.keyframes = {{0, {facing_down(), {0, 4.9f, 0}, 1.0f}}};
    scene.lights.push_back(light);
    scene.camera = {{0, 2.8f, 4.6f}, {0, 0.8f, 0}, 65.0f, 120, 90};
    finalize_scene(scene);
    return scene;
}

Scene builtin_villa_analog() {
    Scene scene;
    scene.frames = 200;
    add_room(scene, {8, 2, 4}, {0, 2, 0}, {0.65f, 0.62f, 0.58f});
    const Vec3 wall_albedo{0.6f, 0.6f, 0.6f};
    scene.objects.push_back(
        box_object("wall-a", {0.15f, 2, 1.7f}, wall_albedo, {at_frame(0, {0, 2, -2.3f})}));
    scene.objects.push_back(
        box_object("wall-b", {0.15f, 2, 1.7f}, wall_albedo, {at_frame(0, {0, 2, 2.3f})}));
    scene.objects.push_back(
        box_object("lintel", {0.15f, 0.75f, 0.6f}, wall_albedo, {at_frame(0, {0, 3.25f, 0})}));
    scene.objects.push_back(box_object("kitchen-table", {1, 0.4f, 0.6f}, {0.5f, 0.35f, 0.25f},
                                       {at_frame(0, {-4, 0.4f, 0})}));
    scene.objects.push_back(box_object("cabinet", {0.5f, 0.75f, 0.5f}, {0.45f, 0.3f, 0.2f},
                                       {at_frame(0, {-7, 0.75f, -2.5f})}));
    scene.objects.push_back(
        box_object("sofa", {1.2f, 0.4f, 0.5f}, {0.3f, 0.4f, 0.5f}, {at_frame(0, {4, 0.4f, 2})}));
    scene.objects.push_back(box_object("coffee-table", {0.6f, 0.3f, 0.6f}, {0.5f, 0.4f, 0.3f},
                                       {at_frame(0, {5, 0.3f, -1})}));

    Light torch;
    torch.kind = LightKind::DiscArea;
    torch.flux = {90, 90, 90};
    torch.radius = 0.25f;
    const Quat aim = quat_rotating_z_to({1.0f, -1.0f, 0.0f});
    constexpr float kTau = 2.0f * std::numbers::pi_v<float>;
    for (int k = 0; k <= 8; ++k) {
        const int frame = k * 25;
        const float angle = kTau * static_cast<float>(k) / 8.0f;
        const Vec3 pos{-4.0f + 1.5f * std::cos(angle), 1.8f, 1.2f * std::sin(angle)};
        torch.keyframes.push_back({frame, {aim, pos, 1.0f}});
    }
    scene.lights.push_back(torch);
    scene.camera = {{5.5f, 1.8f, 3}, {0, 1.2f, 0}, 70.0f, 120, 90};
    finalize_scene(scene);
    return scene;
}

}  // namespace

bool is_builtin_scene(const std::string& name) {
    return name == "static-box" || name == "moving-cube" || name == "parallel-spot" ||
           name == "merry-go-round-analog" || name == "armadillo-analog" ||
           name == "villa-analog" || name == "villa-torch";
}

Scene make_builtin_scene(const std::string& name) {
    if (name == "static-box") return builtin_static_box();
    if (name == "moving-cube") return builtin_moving_cube();
    if (name == "parallel-spot") return builtin_parallel_spot();
    if (name == "merry-go-round-analog") return builtin_merry_go_round();
    if (name == "armadillo-analog") return builtin_armadillo_analog();
    if (name == "villa-analog" || name == "villa-torch") return builtin_villa_analog();
    throw SceneError("unknown builtin scene: " + name);
}

}  // namespace pathreuse
