#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace collabscope::util {

std::string read_text_file(const std::filesystem::path& path);

/// Parses a JSON document; errors name the file.
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Writes via a sibling temporary file and rename, so readers never observe
/// a partially written file.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

/// Canonical serialisation used for everything that is digested: sorted keys
/// (nlohmann's default object ordering), two-space indent, trailing newline.
std::string canonical_dump(const nlohmann::json& doc);

/// Rejects documents whose schema_version is missing or unsupported.
void require_schema_version(const nlohmann::json& doc, int supported, std::string_view what);

}  // namespace collabscope::util
