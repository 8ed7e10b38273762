#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pathreuse/engine.hpp"
#include "pathreuse/gather.hpp"
#include "pathreuse/light.hpp"
#include "pathreuse/photon_store.hpp"

namespace py = pybind11;
using namespace pathreuse;

namespace {

EngineConfig make_config(const std::string& mode, uint32_t paths, uint32_t bounces,
                         const std::vector<uint32_t>& dm, float threshold, uint64_t seed,
                         float radius, unsigned workers) {
    EngineConfig cfg;
    cfg.mode = engine_mode_from_string(mode);
    cfg.n_paths = paths;
    cfg.max_bounces = bounces;
    cfg.dm_dims = dm;
    cfg.threshold = threshold;
    cfg.seed = seed;
    cfg.gather_radius = radius;
    cfg.workers = workers;
    return cfg;
}

py::dict stats_dict(const FrameStats& s) {
    py::dict d;
    d["frame"] = s.frame;
    d["mode"] = to_string(s.mode);
    d["rays_traced"] = s.rays_traced;
    d["rays_reused"] = s.rays_reused;
    d["paths_replaced"] = s.paths_replaced;
    d["paths_pruned"] = s.paths_pruned;
    d["paths_filled"] = s.paths_filled;
    d["visibility_rays"] = s.visibility_rays;
    return d;
}

}  // namespace

PYBIND11_MODULE(_pathreuse, m) {
    m.doc() = "photon path-reuse renderer core";

    m.def("prune_probability", &prune_probability, py::arg("dm_current"), py::arg("dm_target"));

    m.def(
        "energies_close",
        [](std::array<float, 3> e_old, std::array<float, 3> e_new, float threshold) {
            return energies_close(Vec3{e_old[0], e_old[1], e_old[2]},
                                  Vec3{e_new[0], e_new[1], e_new[2]}, threshold);
        },
        py::arg("e_old"), py::arg("e_new"), py::arg("threshold"));

    m.def(
        "encode_path_info",
        [](uint32_t cell, uint32_t seg_count, uint32_t retrace_start, bool replace,
           bool reuse_light) {
            return encode_path_info({cell, seg_count, retrace_start, replace, reuse_light});
        },
        py::arg("cell"), py::arg("seg_count"), py::arg("retrace_start") = 0,
        py::arg("replace") = false, py::arg("reuse_light") = false);

    m.def("decode_path_info", [](uint32_t word) {
        const PathInfoFields f = decode_path_info(word);
        py::dict d;
        d["cell"] = f.cell;
        d["seg_count"] = f.seg_count;
        d["retrace_start"] = f.retrace_start;
        d["replace"] = f.replace;
        d["reuse_light"] = f.reuse_light;
        return d;
    });

    m.def(
        "memory_footprint",
        [](uint64_t n_paths, uint32_t max_bounces, const std::vector<uint32_t>& dm_dims,
           bool area_light) {
            const MemoryFootprint fp = memory_footprint(n_paths, max_bounces, dm_dims, area_light);
            py::dict d;
            d["path_info"] = fp.path_info;
            d["origin_positions"] = fp.origin_positions;
            d["distribution_maps"] = fp.distribution_maps;
            d["pruned_array"] = fp.pruned_array;
            d["photon_map"] = fp.photon_map;
            d["subtotal_reuse"] = fp.subtotal_reuse;
            d["total"] = fp.total;
            return d;
        },
        py::arg("n_paths"), py::arg("max_bounces"), py::arg("dm_dims"), py::arg("area_light"));

    m.def("builtin_scenes", [] {
        return std::vector<std::string>{"static-box",          "moving-cube",
                                        "parallel-spot",       "merry-go-round-analog",
                                        "armadillo-analog",    "villa-analog"};
    });

    m.def(
        "run_builtin",
        [](const std::string& scene, const std::string& mode, uint32_t paths, uint32_t bounces,
           int frames, uint64_t seed, const std::vector<uint32_t>& dm, float threshold,
           float radius, unsigned workers) {
            Engine engine(make_builtin_scene(scene),
                          make_config(mode, paths, bounces, dm, threshold, seed, radius, workers));
            py::list out;
            for (int f = 0; f < frames; ++f) out.append(stats_dict(engine.run_frame()));
            return out;
        },
        py::arg("scene"), py::arg("mode") = "naive", py::arg("paths") = 10000,
        py::arg("bounces") = 7, py::arg("frames") = 1, py::arg("seed") = 1,
        py::arg("dm") = std::vector<uint32_t>{8, 8, 64, 64}, py::arg("threshold") = 0.001f,
        py::arg("radius") = 0.25f, py::arg("workers") = 1);

    m.def(
        "render_builtin",
        [](const std::string& scene, const std::string& mode, uint32_t paths, uint32_t bounces,
           int frames, uint64_t seed, const std::vector<uint32_t>& dm, float threshold,
           float radius, unsigned workers) {
            Engine engine(make_builtin_scene(scene),
                          make_config(mode, paths, bounces, dm, threshold, seed, radius, workers));
            for (int f = 0; f < frames; ++f) engine.run_frame();
            const Image img =
                gather_image(engine.scene_state(), engine.photon_map(), engine.vertex_aux(),
                             engine.scene().camera, radius, workers);
            py::bytes raw(reinterpret_cast<const char*>(img.pixels.data()),
                          img.pixels.size() * sizeof(float));
            return py::make_tuple(img.width, img.height, raw);
        },
        py::arg("scene"), py::arg("mode") = "naive", py::arg("paths") = 10000,
        py::arg("bounces") = 7, py::arg("frames") = 1, py::arg("seed") = 1,
        py::arg("dm") = std::vector<uint32_t>{8, 8, 64, 64}, py::arg("threshold") = 0.001f,
        py::arg("radius") = 0.25f, py::arg("workers") = 1);
}
