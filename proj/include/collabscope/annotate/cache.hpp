#pragma once

#include <atomic>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "collabscope/annotate/backend.hpp"

namespace collabscope::annotate {

/// Stable content hash (SHA-256, hex) over the three fields.
std::string cache_key(std::string_view task, std::string_view content, std::string_view prompt_version);

/// Content-addressed store of raw model replies: <dir>/<key[0:2]>/<key>.json.
/// Reads may run concurrently; writes are serialised and atomic.
class AnnotationCache {
 public:
  explicit AnnotationCache(std::filesystem::path dir);

  std::optional<std::string> get(const std::string& key) const;
  void put(const std::string& key, std::string_view task, std::string_view prompt_version, std::string_view response);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path path_for(const std::string& key) const;

  std::filesystem::path dir_;
  mutable std::shared_mutex mu_;
};

struct CacheStats {
  std::size_t hits = 0;
  std::size_t misses = 0;
};

/// Serves requests from the cache and forwards misses to `inner`, storing
/// their replies. The key covers the backend fingerprint, every message,
/// temperature and sample index.
class CachingBackend final : public ChatBackend {
 public:
  CachingBackend(ChatBackend& inner, AnnotationCache& cache, std::string prompt_version);

  std::string complete(const ChatRequest& request) override;
  std::string fingerprint() const override { return inner_.fingerprint(); }

  CacheStats stats() const { return {hits_.load(), misses_.load()}; }
  std::string key_for(const ChatRequest& request) const;

 private:
  ChatBackend& inner_;
  AnnotationCache& cache_;
  std::string prompt_version_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
};

}  // namespace collabscope::annotate
