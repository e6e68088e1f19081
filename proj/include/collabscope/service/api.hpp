#pragma once

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "collabscope/service/snapshot.hpp"

namespace collabscope::service {

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// Snapshot documents held in memory for request handling. Immutable after
/// construction, so concurrent reads need no locking.
class SnapshotStore {
 public:
  explicit SnapshotStore(const Snapshot& snapshot);

  const std::string& id() const { return id_; }
  /// Raw file bytes, or nullptr when the document is absent.
  const std::string* raw(const std::string& path) const;
  /// Parsed document, or nullptr when absent.
  const nlohmann::json* doc(const std::string& path) const;

 private:
  std::string id_;
  std::map<std::string, std::string> raw_;
  std::map<std::string, nlohmann::json> parsed_;
};

using QueryParams = std::map<std::string, std::string, std::less<>>;

/// Routes one GET request under /api. Unknown ids give 404 and malformed
/// queries 400, both with an `{error: {code, message}}` body.
ApiResponse handle_request(const SnapshotStore& store, std::string_view path, const QueryParams& query);

}  // namespace collabscope::service
