#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

namespace collabscope::service {

inline constexpr std::string_view kManifestFile = "manifest.json";

/// Digest of a document tree: SHA-256 over the (path, content) pairs in path
/// order. The manifest itself is not part of it.
std::string tree_digest(const std::map<std::string, std::string>& files);

/// Documents collected in memory before they are committed.
class SnapshotBuilder {
 public:
  void add_json(const std::string& relative_path, const nlohmann::json& doc);
  void add_text(const std::string& relative_path, std::string content);

  const std::map<std::string, std::string>& files() const { return files_; }
  std::string digest() const { return tree_digest(files_); }

  /// Writes <root>/<digest>/ through a temporary directory and a rename.
  /// An existing snapshot with the same digest is left untouched. Also
  /// records the id in <root>/LATEST. Returns the snapshot directory.
  std::filesystem::path commit(const std::filesystem::path& root) const;

 private:
  std::map<std::string, std::string> files_;
};

/// Read-only view of a committed snapshot.
class Snapshot {
 public:
  /// Opens a snapshot directory; throws ValidationError when it lacks a
  /// manifest.
  explicit Snapshot(std::filesystem::path dir);

  const std::string& id() const { return id_; }
  const std::filesystem::path& dir() const { return dir_; }
  const nlohmann::json& manifest() const { return manifest_; }

  bool has(const std::string& relative_path) const;
  nlohmann::json read_json(const std::string& relative_path) const;
  /// Every file except the manifest, keyed by relative path.
  std::map<std::string, std::string> files() const;

  /// True when the files hash to the snapshot id and match the manifest.
  bool verify() const;

 private:
  std::filesystem::path dir_;
  nlohmann::json manifest_;
  std::string id_;
};

/// Resolves "<root>/LATEST" or a literal directory to a snapshot directory.
std::filesystem::path resolve_snapshot(const std::filesystem::path& root_or_dir);

}  // namespace collabscope::service
