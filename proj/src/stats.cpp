#include "pathreuse/stats.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pathreuse {

const char* const kStatsCsvHeader =
    "frame,mode,rays_traced,rays_reused,paths_replaced,paths_pruned,paths_filled,"
    "visibility_rays,t_update,t_occlusion,t_dm,t_prune,t_fill,t_trace,t_gather";

void write_stats_csv(const std::vector<FrameStats>& rows, std::ostream& out) {
    out << kStatsCsvHeader << "\n";
    for (const FrameStats& s : rows) {
        out << s.frame << ',' << to_string(s.mode) << ',' << s.rays_traced << ','
            << s.rays_reused << ',' << s.paths_replaced << ',' << s.paths_pruned << ','
            << s.paths_filled << ',' << s.visibility_rays << ',' << s.t_update << ','
            << s.t_occlusion << ',' << s.t_dm << ',' << s.t_prune << ',' << s.t_fill << ','
            << s.t_trace << ',' << s.t_gather << "\n";
    }
}

void write_stats_csv(const std::vector<FrameStats>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open stats CSV for writing: " + path);
    write_stats_csv(rows, out);
    if (!out) throw std::runtime_error("failed writing stats CSV: " + path);
}

std::vector<FrameStats> read_stats_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stats CSV: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kStatsCsvHeader)
        throw std::runtime_error("bad stats CSV header in " + path);
    std::vector<FrameStats> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 15)
            throw std::runtime_error("bad stats CSV row in " + path + ": " + line);
        FrameStats s;
        try {
            s.frame = std::stoi(fields[0]);
            s.mode = engine_mode_from_string(fields[1]);
            s.rays_traced = std::stoull(fields[2]);
            s.rays_reused = std::stoull(fields[3]);
            s.paths_replaced = std::stoull(fields[4]);
            s.paths_pruned = std::stoull(fields[5]);
            s.paths_filled = std::stoull(fields[6]);
            s.visibility_rays = std::stoull(fields[7]);
            s.t_update = std::stod(fields[8]);
            s.t_occlusion = std::stod(fields[9]);
            s.t_dm = std::stod(fields[10]);
            s.t_prune = std::stod(fields[11]);
            s.t_fill = std::stod(fields[12]);
            s.t_trace = std::stod(fields[13]);
            s.t_gather = std::stod(fields[14]);
        } catch (const std::exception&) {
            throw std::runtime_error("bad stats CSV row in " + path + ": " + line);
        }
        rows.push_back(s);
    }
    return rows;
}

std::string reuse_report(const std::vector<FrameStats>& rows) {
    std::map<std::string, std::vector<FrameStats>> by_mode;
    for (const FrameStats& s : rows) by_mode[to_string(s.mode)].push_back(s);
    const auto base_it = by_mode.find("baseline");
    if (base_it == by_mode.end())
        throw std::runtime_error("report: no baseline rows to compare against");
    const std::vector<FrameStats>& baseline = base_it->second;
    for (const auto& [mode, mode_rows] : by_mode) {
        if (mode_rows.size() != baseline.size())
            throw std::runtime_error("report: mode '" + mode + "' has " +
                                     std::to_string(mode_rows.size()) + " frames but baseline has " +
                                     std::to_string(baseline.size()));
    }

    std::ostringstream out;
    out << "frames: " << baseline.size() << "\n";
    for (const auto& [mode, mode_rows] : by_mode) {
        double ratio_sum = 0.0;
        double reuse_sum = 0.0;
        out << "mode " << mode << "\n";
        for (size_t i = 0; i < mode_rows.size(); ++i) {
            const FrameStats& s = mode_rows[i];
            const double base = static_cast<double>(baseline[i].rays_traced);
            const double ratio = base > 0 ? static_cast<double>(s.rays_traced) / base : 1.0;
            const double segs = static_cast<double>(s.rays_traced + s.rays_reused);
            const double reuse = segs > 0 ? static_cast<double>(s.rays_reused) / segs : 0.0;
            ratio_sum += ratio;
            reuse_sum += reuse;
            out << "  frame " << s.frame << " traced " << s.rays_traced << " ratio_vs_baseline "
                << ratio << " reuse_fraction " << reuse << "\n";
        }
        out << "  mean ratio_vs_baseline " << ratio_sum / mode_rows.size()
            << " mean reuse_fraction " << reuse_sum / mode_rows.size() << "\n";
    }
    return out.str();
}

}  // namespace pathreuse
