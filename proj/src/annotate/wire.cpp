#include "collabscope/annotate/wire.hpp"

#include <sstream>

#include "collabscope/annotate/prompts.hpp"
#include "collabscope/corpus/transcript.hpp"
#include "collabscope/util/error.hpp"

namespace collabscope::annotate {
namespace {

constexpr std::string_view kMembersPrefix = "Group members: ";
constexpr std::string_view kAnswerMarker = "\nAnswer:\n";

}  // namespace

std::string timestamp_label(const Utterance& u) {
  return corpus::format_seconds(u.start) + "-" + corpus::format_seconds(u.end);
}

std::string behavior_system_message(const CodingScheme& scheme) {
  std::string out(system_prompt(Task::Behavior));
  out += "\n\nBehavior categories:\n";
  for (const auto& c : scheme.categories) {
    out += "- ";
    out += c.name;
    out += '\n';
  }
  return out;
}

std::string behavior_input(int question_id, std::span<const Utterance> batch) {
  QuestionSegment seg;
  seg.question_id = question_id;
  seg.utterances.assign(batch.begin(), batch.end());
  return corpus::format_transcript(std::span<const QuestionSegment>(&seg, 1));
}

QuestionSegment parse_behavior_input(std::string_view text) {
  auto segs = corpus::parse_transcript(text);
  if (segs.size() != 1) throw ValidationError("behavior input must hold exactly one question");
  return std::move(segs.front());
}

std::string role_input(int question_id, const SpeakerId& driver, std::span<const Utterance> batch,
                       std::span<const SpeakerId> members) {
  QuestionSegment seg;
  seg.question_id = question_id;
  seg.driver = driver;
  seg.utterances.assign(batch.begin(), batch.end());
  std::string out = corpus::format_transcript(std::span<const QuestionSegment>(&seg, 1));
  out += kMembersPrefix;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i > 0) out += ", ";
    out += members[i];
  }
  out += '\n';
  return out;
}

RoleInput parse_role_input(std::string_view text) {
  const auto pos = text.rfind(kMembersPrefix);
  if (pos == std::string_view::npos) throw ValidationError("role input lacks the group members line");
  RoleInput in;
  auto segs = corpus::parse_transcript(text.substr(0, pos));
  if (segs.size() != 1 || !segs.front().driver) throw ValidationError("role input must hold one question with a driver");
  in.segment = std::move(segs.front());
  std::string members(text.substr(pos + kMembersPrefix.size()));
  std::istringstream ss(members);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \r\n");
    const auto e = tok.find_last_not_of(" \r\n");
    if (b != std::string::npos) in.members.push_back(tok.substr(b, e - b + 1));
  }
  return in;
}

std::string scaffold_input(std::span<const Utterance> instructor_utterances) {
  std::string out;
  for (const auto& u : instructor_utterances) {
    out += corpus::format_record(u);
    out += '\n';
  }
  return out;
}

std::vector<Utterance> parse_scaffold_input(std::string_view text) { return corpus::parse_records(text); }

std::string code_input(std::string_view question, std::string_view answer) {
  std::string out = "Question: ";
  out += question;
  out += kAnswerMarker;
  out += answer;
  return out;
}

CodeInput parse_code_input(std::string_view text) {
  constexpr std::string_view kQuestion = "Question: ";
  const auto pos = text.find(kAnswerMarker);
  if (text.substr(0, kQuestion.size()) != kQuestion || pos == std::string_view::npos) {
    throw ValidationError("code input must read 'Question: ...\\nAnswer:\\n...'");
  }
  return {std::string(text.substr(kQuestion.size(), pos - kQuestion.size())),
          std::string(text.substr(pos + kAnswerMarker.size()))};
}

}  // namespace collabscope::annotate
