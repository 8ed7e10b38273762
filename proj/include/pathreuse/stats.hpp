#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pathreuse/engine.hpp"

namespace pathreuse {

extern const char* const kStatsCsvHeader;

void write_stats_csv(const std::vector<FrameStats>& rows, std::ostream& out);
void write_stats_csv(const std::vector<FrameStats>& rows, const std::string& path);

/// Parses a CSV produced by write_stats_csv; throws std::runtime_error on a
/// malformed header or row.
std::vector<FrameStats> read_stats_csv(const std::string& path);

/// Per-frame and mean traced-ray ratios of each mode against the baseline
/// rows in the same input. Throws when the baseline is missing or the frame
/// counts differ between modes.
std::string reuse_report(const std::vector<FrameStats>& rows);

}  // namespace pathreuse
