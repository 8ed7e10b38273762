#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "pathreuse/stats.hpp"

using namespace pathreuse;

namespace {

FrameStats row(int frame, EngineMode mode, uint64_t traced, uint64_t reused) {
    FrameStats s;
    s.frame = frame;
    s.mode = mode;
    s.rays_traced = traced;
    s.rays_reused = reused;
    return s;
}

}  // namespace

TEST_CASE("csv round trip") {
    std::vector<FrameStats> rows{row(0, EngineMode::Baseline, 1000, 0),
                                 row(1, EngineMode::Baseline, 990, 0)};
    rows[0].paths_filled = 123;
    rows[1].visibility_rays = 7;
    const auto path = (std::filesystem::temp_directory_path() / "pathreuse_stats_test.csv").string();
    write_stats_csv(rows, path);
    const auto back = read_stats_csv(path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].paths_filled == 123);
    CHECK(back[1].visibility_rays == 7);
    CHECK(back[1].rays_traced == 990);
    CHECK(back[0].mode == EngineMode::Baseline);
    std::filesystem::remove(path);
}

TEST_CASE("malformed csv is rejected") {
    const auto path = (std::filesystem::temp_directory_path() / "pathreuse_stats_bad.csv").string();
    {
        std::ofstream out(path);
        out << "not,a,header\n";
    }
    CHECK_THROWS(read_stats_csv(path));
    std::filesystem::remove(path);
}

TEST_CASE("baseline-only report gives unit ratios") {
    std::vector<FrameStats> rows{row(0, EngineMode::Baseline, 1000, 0),
                                 row(1, EngineMode::Baseline, 800, 0)};
    const std::string report = reuse_report(rows);
    CHECK(report.find("mean ratio_vs_baseline 1") != std::string::npos);
}

TEST_CASE("report rejects mismatched frame counts and missing baseline") {
    std::vector<FrameStats> rows{row(0, EngineMode::Baseline, 1000, 0),
                                 row(1, EngineMode::Baseline, 800, 0),
                                 row(0, EngineMode::Naive, 400, 600)};
    CHECK_THROWS(reuse_report(rows));
    std::vector<FrameStats> no_base{row(0, EngineMode::Naive, 400, 600)};
    CHECK_THROWS(reuse_report(no_base));
}

TEST_CASE("static reuse shows as full reuse fraction") {
    std::vector<FrameStats> rows{row(0, EngineMode::Baseline, 1000, 0),
                                 row(1, EngineMode::Baseline, 1000, 0),
                                 row(0, EngineMode::Naive, 1000, 0),
                                 row(1, EngineMode::Naive, 0, 1000)};
    const std::string report = reuse_report(rows);
    CHECK(report.find("reuse_fraction 1") != std::string::npos);
    CHECK(report.find("ratio_vs_baseline 0 ") != std::string::npos);
}
