#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "collabscope/annotate/backend.hpp"
#include "collabscope/annotate/types.hpp"
#include "collabscope/corpus/types.hpp"

namespace collabscope::annotate {

struct AnnotatorOptions {
  std::size_t batch_size = 40;  // utterances per request
  int max_attempts = 3;
  std::chrono::milliseconds backoff{250};  // doubles after each failed attempt
  double temperature = 0.0;                // single-shot tasks
  double sampling_temperature = 0.7;       // repeated-sample tasks
  int role_samples = 10;
  int code_runs = 10;
  int min_code_runs = 5;
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to sleeping the thread
};

/// A task gave up on a segment. `completed` counts the utterances (or code
/// runs) finished before the failure; their replies are already cached.
class AnnotationError : public BackendError {
 public:
  AnnotationError(Task task, int question_id, std::size_t completed, const std::string& message);

  Task task() const { return task_; }
  int question_id() const { return question_id_; }
  std::size_t completed() const { return completed_; }

 private:
  Task task_;
  int question_id_;
  std::size_t completed_;
};

/// One annotation per utterance, in order, each carrying a scheme category.
std::vector<BehaviorAnnotation> annotate_behaviors(const corpus::QuestionSegment& segment,
                                                   const corpus::CodingScheme& scheme, ChatBackend& backend,
                                                   const AnnotatorOptions& options = {});

/// Majority vote over `options.role_samples` sampled replies per utterance.
/// Requires a declared driver; `students` lists the three group members.
std::vector<RoleAssignment> annotate_roles(const corpus::QuestionSegment& segment,
                                           std::span<const corpus::SpeakerId> students, ChatBackend& backend,
                                           const AnnotatorOptions& options = {});

/// One event per instructor utterance; empty when the instructor is silent.
std::vector<ScaffoldEvent> annotate_scaffolding(const corpus::QuestionSegment& segment,
                                                const corpus::SpeakerId& instructor, ChatBackend& backend,
                                                const AnnotatorOptions& options = {});

/// Grades `answer` `options.code_runs` times and averages the surviving runs.
CodeScore score_code(std::string_view question, std::string_view answer, ChatBackend& backend,
                     const AnnotatorOptions& options = {});

/// Reads the dimension scores out of a single grading reply.
DimensionScores parse_code_reply_scores(std::string_view reply);

}  // namespace collabscope::annotate
