#include <doctest.h>

#include "collabscope/annotate/role_vote.hpp"

using namespace collabscope;
using namespace collabscope::annotate;

namespace {

const RoleCandidate kPlan{"0302", {"0301", "0303"}, {"None"}};
const RoleCandidate kCode{std::nullopt, {"0301", "0303"}, {"0302"}};
const RoleCandidate kListen{std::nullopt, {"0301", "0302", "0303"}, {"None"}};

std::vector<RoleSample> samples(std::initializer_list<std::pair<RoleCandidate, int>> spec, double conf = 1.0) {
  std::vector<RoleSample> out;
  for (const auto& [c, n] : spec) {
    for (int i = 0; i < n; ++i) out.push_back({c, conf});
  }
  return out;
}

}  // namespace

TEST_CASE("driver who plans becomes navigator with a None driver slot") {
  RoleCandidate raw{"0302", {"0303", "0301"}, {"0302"}};
  CHECK(normalize_candidate(raw, "0302") == kPlan);
  RoleCandidate other{"0301", {"0303"}, {"0302"}};
  CHECK(normalize_candidate(other, "0302").drivers == std::vector<std::string>{"0302"});
}

TEST_CASE("unanimous samples are adopted with a full margin") {
  const auto s = samples({{kPlan, 10}});
  const auto r = vote_roles({1, 0}, s, nullptr, kCode);
  CHECK(r.roles == kPlan);
  CHECK(r.votes == 10);
  CHECK(r.valid_samples == 10);
  CHECK_FALSE(r.uncertain);
  CHECK(r.candidates.empty());
}

TEST_CASE("majority wins over minority") {
  const auto s = samples({{kCode, 6}, {kPlan, 3}, {kListen, 1}});
  const auto r = vote_roles({1, 0}, s, nullptr, kListen);
  CHECK(r.roles == kCode);
  CHECK(r.votes == 6);
  CHECK_FALSE(r.uncertain);
}

TEST_CASE("ties break on summed confidence, then continuity, and are flagged") {
  std::vector<RoleSample> s = samples({{kCode, 5}}, 0.9);
  auto more = samples({{kPlan, 5}}, 0.8);
  s.insert(s.end(), more.begin(), more.end());
  auto r = vote_roles({1, 0}, s, &kPlan, kListen);
  CHECK(r.roles == kCode);  // confidence outranks continuity
  CHECK(r.uncertain);
  CHECK(r.candidates.size() == 2);

  s = samples({{kCode, 5}, {kPlan, 5}});
  r = vote_roles({1, 0}, s, &kPlan, kListen);
  CHECK(r.roles == kPlan);
  CHECK(r.uncertain);

  r = vote_roles({1, 0}, s, nullptr, kListen);
  CHECK(r.roles == std::min(kCode, kPlan));
  CHECK(r.uncertain);
}

TEST_CASE("no valid sample adopts the fallback and flags it") {
  std::vector<RoleSample> s(10);
  const auto r = vote_roles({2, 3}, s, nullptr, kCode);
  CHECK(r.roles == kCode);
  CHECK(r.uncertain);
  CHECK(r.valid_samples == 0);
  CHECK(r.ref == corpus::UtteranceRef{2, 3});
}

TEST_CASE("invalid samples do not vote") {
  auto s = samples({{kPlan, 4}});
  s.resize(10);
  const auto r = vote_roles({1, 0}, s, nullptr, kCode);
  CHECK(r.roles == kPlan);
  CHECK(r.valid_samples == 4);
}
