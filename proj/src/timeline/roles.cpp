#include "collabscope/timeline/roles.hpp"

#include "collabscope/util/error.hpp"

namespace collabscope::timeline {

std::vector<RoleCell> build_role_strip(const corpus::QuestionSegment& segment,
                                       std::span<const annotate::RoleAssignment> roles,
                                       std::span<const corpus::SpeakerId> students) {
  std::vector<RoleCell> cells;
  cells.reserve(roles.size() * students.size());
  for (const auto& a : roles) {
    if (a.ref.question_id != segment.question_id || a.ref.index >= segment.utterances.size()) {
      throw ValidationError("role assignment refers outside question " + std::to_string(segment.question_id));
    }
    if (!annotate::satisfies_partition(a.roles, students)) {
      throw ValidationError("role assignment for question " + std::to_string(segment.question_id) + " utterance " +
                            std::to_string(a.ref.index) + " does not place each student exactly once");
    }
    const auto& u = segment.utterances[a.ref.index];
    for (const auto& s : students) cells.push_back({a.ref, u.start, u.end, s, annotate::role_of(a.roles, s), a.uncertain});
  }
  return cells;
}

}  // namespace collabscope::timeline
