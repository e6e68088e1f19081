#include "collabscope/annotate/cache.hpp"

#include <mutex>

#include <json.hpp>

#include "collabscope/util/digest.hpp"
#include "collabscope/util/json_io.hpp"

namespace collabscope::annotate {

std::string cache_key(std::string_view task, std::string_view content, std::string_view prompt_version) {
  util::Sha256 h;
  h.update_field("collabscope-cache/1");
  h.update_field(task);
  h.update_field(prompt_version);
  h.update_field(content);
  return h.hex_digest();
}

AnnotationCache::AnnotationCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path AnnotationCache::path_for(const std::string& key) const {
  return dir_ / key.substr(0, 2) / (key + ".json");
}

std::optional<std::string> AnnotationCache::get(const std::string& key) const {
  std::shared_lock lock(mu_);
  const auto path = path_for(key);
  if (!std::filesystem::exists(path)) return std::nullopt;
  const auto doc = nlohmann::json::parse(util::read_text_file(path), nullptr, false);
  // A damaged entry is treated as absent and will be overwritten.
  if (doc.is_discarded() || doc.value("key", std::string{}) != key || !doc.contains("response")) return std::nullopt;
  return doc["response"].get<std::string>();
}

void AnnotationCache::put(const std::string& key, std::string_view task, std::string_view prompt_version,
                          std::string_view response) {
  nlohmann::json doc = {{"schema_version", 1},
                        {"key", key},
                        {"task", task},
                        {"prompt_version", prompt_version},
                        {"response", response}};
  std::unique_lock lock(mu_);
  util::write_text_atomic(path_for(key), util::canonical_dump(doc));
}

CachingBackend::CachingBackend(ChatBackend& inner, AnnotationCache& cache, std::string prompt_version)
    : inner_(inner), cache_(cache), prompt_version_(std::move(prompt_version)) {}

std::string CachingBackend::key_for(const ChatRequest& request) const {
  nlohmann::json content = {{"backend", inner_.fingerprint()},
                            {"temperature", request.temperature},
                            {"sample", request.sample_index},
                            {"messages", nlohmann::json::array()}};
  for (const auto& m : request.messages) content["messages"].push_back({{"role", m.role}, {"content", m.content}});
  return cache_key(task_name(request.task), content.dump(), prompt_version_);
}

std::string CachingBackend::complete(const ChatRequest& request) {
  const auto key = key_for(request);
  if (auto hit = cache_.get(key)) {
    ++hits_;
    return *hit;
  }
  ++misses_;
  std::string reply = inner_.complete(request);
  cache_.put(key, task_name(request.task), prompt_version_, reply);
  return reply;
}

}  // namespace collabscope::annotate
