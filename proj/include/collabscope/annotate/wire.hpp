#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collabscope/corpus/types.hpp"

namespace collabscope::annotate {

using corpus::CodingScheme;
using corpus::QuestionSegment;
using corpus::SpeakerId;
using corpus::Utterance;

// User-message payloads for each task, plus their inverses (the mock
// backend reads requests through these).

/// "<start>-<end>" as the model is asked to echo it back.
std::string timestamp_label(const Utterance& u);

std::string behavior_system_message(const CodingScheme& scheme);
std::string behavior_input(int question_id, std::span<const Utterance> batch);
QuestionSegment parse_behavior_input(std::string_view text);

/// Transcript with the "Question<N> Driver: <id>" header first, then a
/// trailing "Group members: a, b, c" line so the model can fill every slot.
std::string role_input(int question_id, const SpeakerId& driver, std::span<const Utterance> batch,
                       std::span<const SpeakerId> members);

struct RoleInput {
  QuestionSegment segment;
  std::vector<SpeakerId> members;
};
RoleInput parse_role_input(std::string_view text);

std::string scaffold_input(std::span<const Utterance> instructor_utterances);
std::vector<Utterance> parse_scaffold_input(std::string_view text);

std::string code_input(std::string_view question, std::string_view answer);

struct CodeInput {
  std::string question;
  std::string answer;
};
CodeInput parse_code_input(std::string_view text);

}  // namespace collabscope::annotate
