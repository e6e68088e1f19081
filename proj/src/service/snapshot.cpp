#include "collabscope/service/snapshot.hpp"

#include <chrono>
#include <ctime>
#include <random>
#include <system_error>

#include "collabscope/util/digest.hpp"
#include "collabscope/util/error.hpp"
#include "collabscope/util/json_io.hpp"

namespace collabscope::service {
namespace fs = std::filesystem;

std::string tree_digest(const std::map<std::string, std::string>& files) {
  util::Sha256 h;
  h.update_field("collabscope-snapshot/1");
  for (const auto& [path, content] : files) {
    h.update_field(path);
    h.update_field(content);
  }
  return h.hex_digest();
}

void SnapshotBuilder::add_json(const std::string& relative_path, const nlohmann::json& doc) {
  add_text(relative_path, util::canonical_dump(doc));
}

void SnapshotBuilder::add_text(const std::string& relative_path, std::string content) {
  if (relative_path.empty() || fs::path(relative_path).is_absolute() || relative_path.find("..") != std::string::npos ||
      relative_path == kManifestFile) {
    throw ValidationError("invalid snapshot path '" + relative_path + "'");
  }
  files_[relative_path] = std::move(content);
}

fs::path SnapshotBuilder::commit(const fs::path& root) const {
  const std::string id = digest();
  const fs::path final_dir = root / id;
  fs::create_directories(root);
  if (!fs::exists(final_dir)) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);
    nlohmann::json hashes = nlohmann::json::object();
    for (const auto& [path, content] : files_) hashes[path] = util::sha256_hex(content);
    const nlohmann::json manifest = {{"schema_version", 1},
                                     {"snapshot_id", id},
                                     {"created_at", stamp},
                                     {"files", hashes}};

    const fs::path tmp = root / (".tmp-" + id + "-" + std::to_string(std::random_device{}()));
    fs::create_directories(tmp);
    for (const auto& [path, content] : files_) util::write_text_atomic(tmp / path, content);
    util::write_text_atomic(tmp / kManifestFile, util::canonical_dump(manifest));
    std::error_code ec;
    fs::rename(tmp, final_dir, ec);
    if (ec) {
      // Another writer committed the same content first.
      fs::remove_all(tmp);
      if (!fs::exists(final_dir)) throw std::runtime_error("cannot commit snapshot: " + ec.message());
    }
  }
  util::write_text_atomic(root / "LATEST", id + "\n");
  return final_dir;
}

Snapshot::Snapshot(fs::path dir) : dir_(std::move(dir)) {
  const auto manifest_path = dir_ / kManifestFile;
  if (!fs::exists(manifest_path)) throw ValidationError("no snapshot manifest in " + dir_.string());
  manifest_ = util::read_json_file(manifest_path);
  util::require_schema_version(manifest_, 1, "manifest.json");
  id_ = manifest_.value("snapshot_id", std::string{});
}

bool Snapshot::has(const std::string& relative_path) const { return fs::is_regular_file(dir_ / relative_path); }

nlohmann::json Snapshot::read_json(const std::string& relative_path) const {
  return util::read_json_file(dir_ / relative_path);
}

std::map<std::string, std::string> Snapshot::files() const {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir_)) {
    if (!entry.is_regular_file()) continue;
    const std::string rel = fs::relative(entry.path(), dir_).generic_string();
    if (rel == kManifestFile) continue;
    out[rel] = util::read_text_file(entry.path());
  }
  return out;
}

bool Snapshot::verify() const {
  const auto contents = files();
  if (tree_digest(contents) != id_) return false;
  const auto& listed = manifest_.at("files");
  if (listed.size() != contents.size()) return false;
  for (const auto& [path, content] : contents) {
    if (!listed.contains(path) || listed.at(path).get<std::string>() != util::sha256_hex(content)) return false;
  }
  return true;
}

fs::path resolve_snapshot(const fs::path& root_or_dir) {
  if (fs::exists(root_or_dir / kManifestFile)) return root_or_dir;
  const auto latest = root_or_dir / "LATEST";
  if (!fs::exists(latest)) throw ValidationError("no snapshot found at " + root_or_dir.string());
  std::string id = util::read_text_file(latest);
  while (!id.empty() && (id.back() == '\n' || id.back() == '\r')) id.pop_back();
  return root_or_dir / id;
}

}  // namespace collabscope::service
