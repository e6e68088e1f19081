#include "collabscope/annotate/role_vote.hpp"

#include <algorithm>

namespace collabscope::annotate {

RoleCandidate normalize_candidate(RoleCandidate c, const SpeakerId& driver) {
  if (c.navigator && *c.navigator == driver) {
    std::erase(c.drivers, driver);
    if (c.drivers.empty()) c.drivers.push_back(std::string(kNoneSentinel));
  }
  std::sort(c.monitors.begin(), c.monitors.end());
  std::sort(c.drivers.begin(), c.drivers.end());
  return c;
}

RoleAssignment vote_roles(const UtteranceRef& ref, std::span<const RoleSample> samples, const RoleCandidate* previous,
                          const RoleCandidate& fallback) {
  RoleAssignment out;
  out.ref = ref;
  std::vector<RoleTally> tallies;
  for (const auto& s : samples) {
    if (!s.candidate) continue;
    ++out.valid_samples;
    auto it = std::find_if(tallies.begin(), tallies.end(), [&](const RoleTally& t) { return t.candidate == *s.candidate; });
    if (it == tallies.end()) {
      tallies.push_back({*s.candidate, 0, 0.0});
      it = std::prev(tallies.end());
    }
    ++it->votes;
    it->confidence_sum += s.confidence;
  }
  if (tallies.empty()) {
    out.roles = fallback;
    out.uncertain = true;
    return out;
  }
  std::sort(tallies.begin(), tallies.end(), [](const RoleTally& a, const RoleTally& b) { return a.candidate < b.candidate; });

  const int top_votes = std::max_element(tallies.begin(), tallies.end(), [](const RoleTally& a, const RoleTally& b) {
                          return a.votes < b.votes;
                        })->votes;
  std::vector<const RoleTally*> leaders;
  for (const auto& t : tallies) {
    if (t.votes == top_votes) leaders.push_back(&t);
  }
  if (leaders.size() > 1) {
    double best_conf = 0.0;
    for (const auto* t : leaders) best_conf = std::max(best_conf, t->confidence_sum);
    std::erase_if(leaders, [&](const RoleTally* t) { return t->confidence_sum < best_conf; });
  }
  const RoleTally* chosen = leaders.front();
  if (leaders.size() > 1 && previous != nullptr) {
    for (const auto* t : leaders) {
      if (t->candidate == *previous) chosen = t;
    }
  }
  out.roles = chosen->candidate;
  out.votes = chosen->votes;
  const auto tied = std::count_if(tallies.begin(), tallies.end(), [&](const RoleTally& t) { return t.votes == top_votes; });
  if (tied > 1) {
    out.uncertain = true;
    out.candidates = std::move(tallies);
  }
  return out;
}

}  // namespace collabscope::annotate
