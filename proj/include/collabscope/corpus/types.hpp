#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace collabscope::corpus {

/// Four-digit diarization label, e.g. "0302".
using SpeakerId = std::string;

inline constexpr std::string_view kDefaultInstructor = "0000";

bool is_speaker_id(std::string_view s);

struct Utterance {
  double start = 0.0;  // seconds
  double end = 0.0;
  SpeakerId speaker;
  std::string text;

  double duration() const { return end - start; }
  bool operator==(const Utterance&) const = default;
};

/// Addresses one utterance: question plus position within that question.
struct UtteranceRef {
  int question_id = 0;
  std::size_t index = 0;

  auto operator<=>(const UtteranceRef&) const = default;
};

struct QuestionSegment {
  int question_id = 0;
  std::optional<SpeakerId> driver;
  std::vector<Utterance> utterances;

  /// Span of the discussion: first start to the latest end.
  double span_start() const;
  double span_end() const;

  bool operator==(const QuestionSegment&) const = default;
};

struct Student {
  SpeakerId id;
  std::string major;
  double prior_score = 0.0;  // 0-100
};

struct Category {
  std::string name;
  int color_group = 1;  // 1..4

  bool operator==(const Category&) const = default;
};

struct CodingScheme {
  std::vector<Category> categories;
  int expected_count = 14;

  std::optional<std::size_t> index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }
  std::size_t size() const { return categories.size(); }

  bool operator==(const CodingScheme&) const = default;
};

struct Session {
  std::string group_id;
  std::vector<Student> students;  // exactly three
  std::vector<QuestionSegment> segments;
  std::optional<std::string> media_ref;
  std::map<int, std::string> code_submissions;
  SpeakerId instructor = SpeakerId(kDefaultInstructor);
  std::optional<CodingScheme> scheme;  // from the group's scheme.json, if any

  const QuestionSegment* find_segment(int question_id) const;
  std::vector<SpeakerId> student_ids() const;
  bool is_student(std::string_view speaker) const;
};

}  // namespace collabscope::corpus
