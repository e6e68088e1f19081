#include "collabscope/service/export.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "collabscope/annotate/types.hpp"
#include "collabscope/util/error.hpp"

namespace collabscope::service {
namespace {

using nlohmann::json;

std::string fixed(const json& v, int digits) {
  if (v.is_null()) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v.get<double>());
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << bytes;
  if (!out) throw ValidationError("cannot write " + path.string());
}

}  // namespace

const std::vector<std::string> kCsvColumns = {
    "group_id",       "status",        "mean_score",    "sigma_e",     "cv_e",
    "quality",        "mean_behavioral", "mean_cognitive", "scaffold_cs_l", "scaffold_cs_m",
    "scaffold_cs_h",  "scaffold_ms",   "duration",      "prior_performance", "butterfly_count",
    "leaf_color_level", "x",            "y"};

ExportFormat parse_export_format(std::string_view name) {
  if (name == "json-bundle") return ExportFormat::JsonBundle;
  if (name == "csv-metrics") return ExportFormat::CsvMetrics;
  throw ValidationError("unknown export format: " + std::string(name));
}

std::string csv_metrics(const Snapshot& snapshot) {
  std::ostringstream out;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) out << (i ? "," : "") << kCsvColumns[i];
  out << '\n';
  const json overview = snapshot.read_json("cohort/groups.json");
  for (const auto& g : overview.at("groups")) {
    const std::string id = g.at("group_id").get<std::string>();
    const json p = snapshot.read_json("groups/" + id + "/profile.json");
    std::vector<std::string> row = {id, p.at("status").get<std::string>()};
    if (p.at("status") == "ok") {
      for (const char* k : {"mean_score", "sigma_e", "cv_e", "quality", "mean_behavioral", "mean_cognitive"}) {
        row.push_back(fixed(p.at(k), 4));
      }
      for (const auto kind : annotate::kAllScaffoldKinds) {
        row.push_back(std::to_string(p.at("scaffold_counts").at(std::string(annotate::scaffold_code(kind))).get<int>()));
      }
      row.push_back(fixed(p.at("duration"), 2));
      row.push_back(fixed(p.at("prior_performance"), 2));
      row.push_back(std::to_string(p.at("glyph").at("butterfly_count").get<int>()));
      row.push_back(std::to_string(p.at("glyph").at("leaf_color_level").get<int>()));
      const json& xy = p.at("projection");
      row.push_back(xy.is_null() ? "" : fixed(xy[0], 4));
      row.push_back(xy.is_null() ? "" : fixed(xy[1], 4));
    } else {
      row.resize(kCsvColumns.size());
    }
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  return out.str();
}

std::vector<std::filesystem::path> export_snapshot(const Snapshot& snapshot, ExportFormat format,
                                                   const std::filesystem::path& out) {
  std::vector<std::filesystem::path> written;
  if (format == ExportFormat::CsvMetrics) {
    written.push_back(out / "metrics.csv");
    write_file(written.back(), csv_metrics(snapshot));
    return written;
  }
  const auto dest = out / snapshot.id();
  auto files = snapshot.files();
  std::ifstream manifest(snapshot.dir() / std::string(kManifestFile), std::ios::binary);
  files.emplace(std::string(kManifestFile), std::string(std::istreambuf_iterator<char>(manifest), {}));
  for (const auto& [rel, bytes] : files) {
    written.push_back(dest / rel);
    write_file(written.back(), bytes);
  }
  return written;
}

}  // namespace collabscope::service
