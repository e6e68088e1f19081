#pragma once

#include <optional>
#include <span>

#include "collabscope/annotate/types.hpp"

namespace collabscope::annotate {

/// One sampled answer for one utterance. `candidate` is empty when the
/// sample's entry failed validation; such votes are dropped.
struct RoleSample {
  std::optional<RoleCandidate> candidate;
  double confidence = 1.0;
};

/// Sorts the lists and applies the displaced-driver rule: when the fixed
/// driver is the navigator it leaves the drivers list, which then holds only
/// "None".
RoleCandidate normalize_candidate(RoleCandidate c, const SpeakerId& driver);

/// Majority vote over the valid samples. Ties on votes are broken by summed
/// confidence, then by agreement with `previous`, then by the smallest
/// configuration in canonical order; any vote tie marks the result uncertain
/// and keeps every tallied candidate. With no valid samples `fallback` is
/// adopted and flagged uncertain.
RoleAssignment vote_roles(const UtteranceRef& ref, std::span<const RoleSample> samples, const RoleCandidate* previous,
                          const RoleCandidate& fallback);

}  // namespace collabscope::annotate
