#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "collabscope/annotate/backend.hpp"

namespace collabscope::annotate {

struct HttpBackendConfig {
  std::string endpoint;  // scheme://host[:port][/base], e.g. "https://api.example.com/v1"
  std::string model;
  std::optional<std::string> api_key;  // sent as a bearer token when present
  std::optional<std::uint64_t> seed;
  std::chrono::seconds timeout{120};
};

/// Client for OpenAI-compatible chat-completion servers: POSTs
/// {model, messages, temperature[, seed]} to <endpoint>/chat/completions and
/// returns choices[0].message.content. Transport failures, non-2xx statuses
/// and unexpected bodies surface as BackendError.
class HttpChatBackend final : public ChatBackend {
 public:
  explicit HttpChatBackend(HttpBackendConfig config);

  std::string complete(const ChatRequest& request) override;
  std::string fingerprint() const override;

 private:
  HttpBackendConfig config_;
  std::string origin_;
  std::string path_;
};

}  // namespace collabscope::annotate
