#include "collabscope/util/json_io.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "collabscope/util/error.hpp"

namespace collabscope::util {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path.string() + ": invalid JSON: " + e.what());
  }
}

void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
  static std::atomic<unsigned> counter{0};
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()) % 100000) +
         "." + std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string canonical_dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

void require_schema_version(const nlohmann::json& doc, int supported, std::string_view what) {
  if (!doc.is_object() || !doc.contains("schema_version") || !doc["schema_version"].is_number_integer()) {
    throw ValidationError(std::string(what) + ": missing integer schema_version");
  }
  if (doc["schema_version"].get<int>() != supported) {
    throw ValidationError(std::string(what) + ": unsupported schema_version " +
                          doc["schema_version"].dump());
  }
}

}  // namespace collabscope::util
