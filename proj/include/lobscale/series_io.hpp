#pragma once

#include <filesystem>
#include <string>

#include "lobscale/estimators.hpp"
#include "lobscale/series.hpp"

namespace lobscale {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

/// Single-column CSV of values plus a `<stem>.meta.json` sidecar carrying
/// kind, domain, and provenance. Writing is deterministic byte-for-byte.
void write_series_csv(const Series& series, const std::filesystem::path& path);

/// Reads a series CSV; picks up the sidecar when present, otherwise the
/// caller gets synthetic-kind increment values with empty meta.
Series read_series_csv(const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

/// 3-column CSV: bin_center,density,count.
void write_log_histogram_csv(const LogHistogram& hist, const std::filesystem::path& path);

}  // namespace lobscale
