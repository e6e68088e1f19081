#pragma once

#include <span>
#include <vector>

#include "collabscope/annotate/types.hpp"
#include "collabscope/corpus/types.hpp"

namespace collabscope::timeline {

/// One rectangle of the role strip.
struct RoleCell {
  corpus::UtteranceRef ref;
  double t0 = 0.0;
  double t1 = 0.0;
  corpus::SpeakerId student;
  annotate::Role role = annotate::Role::None;
  bool uncertain = false;
};

/// Three cells per assignment, in roster order. Throws ValidationError when
/// an assignment breaks the partition rule or points outside the segment.
std::vector<RoleCell> build_role_strip(const corpus::QuestionSegment& segment,
                                       std::span<const annotate::RoleAssignment> roles,
                                       std::span<const corpus::SpeakerId> students);

}  // namespace collabscope::timeline
