#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "collabscope/util/error.hpp"

namespace collabscope::annotate {

enum class Task { CodeScore, Behavior, Roles, Scaffolding };

std::string_view task_name(Task task);

struct ChatMessage {
  std::string role;  // "system" | "user" | "assistant"
  std::string content;
};

struct ChatRequest {
  Task task = Task::Behavior;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  int sample_index = 0;  // distinguishes repeated samples of one prompt
};

/// Provider-agnostic chat completion: messages in, text out. Implementations
/// must be safe to call concurrently.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual std::string complete(const ChatRequest& request) = 0;
  /// Identifies the model/configuration; participates in cache keys.
  virtual std::string fingerprint() const = 0;
};

/// Answers nothing. Used for cache-only recomputation.
class OfflineBackend final : public ChatBackend {
 public:
  explicit OfflineBackend(std::string fingerprint) : fingerprint_(std::move(fingerprint)) {}
  std::string complete(const ChatRequest&) override {
    throw BackendError("offline: response not present in the annotation cache");
  }
  std::string fingerprint() const override { return fingerprint_; }

 private:
  std::string fingerprint_;
};

}  // namespace collabscope::annotate
