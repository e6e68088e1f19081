#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "collabscope/service/snapshot.hpp"

namespace collabscope::service {

enum class ExportFormat { JsonBundle, CsvMetrics };

/// Throws ValidationError for anything but "json-bundle" or "csv-metrics".
ExportFormat parse_export_format(std::string_view name);

/// Column order of the csv-metrics export.
extern const std::vector<std::string> kCsvColumns;

/// Renders the csv-metrics table for a snapshot: a header and one row per group.
std::string csv_metrics(const Snapshot& snapshot);

/// Writes the export under `out`. json-bundle copies the snapshot tree
/// (manifest included) into out/<snapshot id>/; csv-metrics writes
/// out/metrics.csv. Returns the files written.
std::vector<std::filesystem::path> export_snapshot(const Snapshot& snapshot, ExportFormat format,
                                                   const std::filesystem::path& out);

}  // namespace collabscope::service
