#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <string_view>

#include "collabscope/annotate/backend.hpp"
#include "collabscope/annotate/types.hpp"

namespace collabscope::annotate {

struct MockOptions {
  std::uint64_t seed = 17;
  double jitter = 5.0;            // +/- confidence points, drawn per (text, sample)
  double role_flip_rate = 0.1;    // chance a sample inverts the planning decision
  double code_variation = 0.2;    // chance a scoring run shifts one dimension by 1
};

/// Keyword-rule stand-in for the chat model. It reads the same request
/// payloads the real model gets and answers in the same JSON formats, so the
/// whole parsing path is exercised offline. Fully determined by
/// (request, options).
class MockBackend final : public ChatBackend {
 public:
  explicit MockBackend(MockOptions options = {}) : options_(options) {}

  std::string complete(const ChatRequest& request) override;
  std::string fingerprint() const override;

  std::size_t calls() const { return calls_.load(); }

 private:
  std::string behavior_reply(std::string_view input, int sample) const;
  std::string roles_reply(std::string_view input, int sample) const;
  std::string scaffolding_reply(std::string_view input, int sample) const;
  std::string code_reply(std::string_view input, int sample) const;
  double jittered(double base, std::string_view key, int sample) const;

  MockOptions options_;
  std::atomic<std::size_t> calls_{0};
};

// The rules themselves, exposed for testing.

struct MockLabel {
  std::string label;
  double confidence = 0.0;
  std::string explanation;
};

MockLabel mock_behavior(std::string_view text);
bool mock_is_planning(std::string_view text);
MockLabel mock_scaffold(std::string_view text);
DimensionScores mock_code_grade(std::string_view code);

}  // namespace collabscope::annotate
