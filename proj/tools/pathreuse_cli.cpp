#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pathreuse/engine.hpp"
#include "pathreuse/gather.hpp"
#include "pathreuse/parallel.hpp"
#include "pathreuse/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pathreuse;

namespace {

std::vector<uint32_t> parse_dm_dims(const std::string& text) {
    std::vector<uint32_t> dims;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, 'x')) {
        if (part.empty()) throw CLI::ValidationError("--dm", "expected AxBxCxD");
        dims.push_back(static_cast<uint32_t>(std::stoul(part)));
    }
    if (dims.size() != 4) throw CLI::ValidationError("--dm", "expected exactly 4 axis counts");
    return dims;
}

struct RunConfig {
    std::string scene = "builtin:static-box";
    std::string mode = "naive";
    uint32_t paths = 100000;
    uint32_t bounces = 7;
    std::string dm = "8x8x64x64";
    float threshold = 0.001f;
    int frames = 1;
    uint64_t seed = 1;
    float radius = 0.25f;
    std::string out = "out";
    std::string images = "on";
    unsigned workers = 0;  // 0 = logical cores
    std::string dump_photons;
};

json config_json(const RunConfig& rc) {
    return json{{"scene", rc.scene},     {"mode", rc.mode},
                {"paths", rc.paths},     {"bounces", rc.bounces},
                {"dm", rc.dm},           {"threshold", rc.threshold},
                {"frames", rc.frames},   {"seed", rc.seed},
                {"radius", rc.radius},   {"out", rc.out},
                {"images", rc.images},   {"workers", rc.workers}};
}

int run(const RunConfig& rc) {
    Scene scene;
    try {
        scene = load_scene_source(rc.scene);
    } catch (const std::exception& e) {
        std::cerr << "scene error: " << e.what() << "\n";
        return 1;
    }

    EngineConfig cfg;
    cfg.mode = engine_mode_from_string(rc.mode);
    cfg.n_paths = rc.paths;
    cfg.max_bounces = rc.bounces;
    cfg.dm_dims = parse_dm_dims(rc.dm);
    cfg.threshold = rc.threshold;
    cfg.seed = rc.seed;
    cfg.gather_radius = rc.radius;
    cfg.workers = rc.workers == 0 ? default_worker_count() : rc.workers;

    try {
        fs::create_directories(rc.out);
        {
            std::ofstream echo(fs::path(rc.out) / "config.json");
            echo << config_json(rc).dump(2) << "\n";
        }

        Engine engine(std::move(scene), cfg);
        std::vector<FrameStats> rows;
        for (int f = 0; f < rc.frames; ++f) {
            FrameStats stats = engine.run_frame();
            if (rc.images == "on") {
                const auto t0 = std::chrono::steady_clock::now();
                const Image img =
                    gather_image(engine.scene_state(), engine.photon_map(), engine.vertex_aux(),
                                 engine.scene().camera, cfg.gather_radius, cfg.workers);
                write_image(img, (fs::path(rc.out) / frame_image_name(f)).string());
                stats.t_gather =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            }
            rows.push_back(stats);
            std::cout << "frame " << f << " traced " << stats.rays_traced << " reused "
                      << stats.rays_reused << " pruned " << stats.paths_pruned << " filled "
                      << stats.paths_filled << "\n";
        }
        write_stats_csv(rows, (fs::path(rc.out) / "stats.csv").string());
        if (!rc.dump_photons.empty()) write_photon_dump(engine.photon_map(), rc.dump_photons);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int report(const std::vector<std::string>& csvs) {
    try {
        std::vector<FrameStats> rows;
        for (const std::string& path : csvs) {
            auto part = read_stats_csv(path);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        std::cout << reuse_report(rows);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"photon path-reuse renderer"};
    app.require_subcommand(0, 1);

    RunConfig rc;
    app.add_option("--scene", rc.scene, "scene file or builtin:NAME");
    app.add_option("--mode", rc.mode, "baseline | naive | error")
        ->check(CLI::IsMember({"baseline", "naive", "error"}));
    app.add_option("--paths", rc.paths, "light paths per frame");
    app.add_option("--bounces", rc.bounces, "max photons per path (1..16)");
    app.add_option("--dm", rc.dm, "distribution map dims AxBxCxD");
    app.add_option("--threshold", rc.threshold, "error-based energy threshold");
    app.add_option("--frames", rc.frames, "frames to run");
    app.add_option("--seed", rc.seed, "RNG seed");
    app.add_option("--radius", rc.radius, "gather radius, world units");
    app.add_option("--out", rc.out, "output directory");
    app.add_option("--images", rc.images, "write per-frame PPM images")
        ->check(CLI::IsMember({"on", "off"}));
    app.add_option("--workers", rc.workers, "worker threads (0 = logical cores)");
    app.add_option("--dump-photons", rc.dump_photons, "write final photon map dump here");

    std::vector<std::string> report_csvs;
    CLI::App* rep = app.add_subcommand("report", "summarize stats CSVs against the baseline");
    rep->add_option("csv", report_csvs, "stats.csv files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (rep->parsed()) return report(report_csvs);

    if (const char* env = std::getenv("PHOTON_REUSE_THREADS")) {
        rc.workers = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    }
    return run(rc);
}
