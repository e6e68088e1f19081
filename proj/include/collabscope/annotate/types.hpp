#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collabscope/corpus/types.hpp"

namespace collabscope::annotate {

using corpus::SpeakerId;
using corpus::UtteranceRef;

struct BehaviorAnnotation {
  UtteranceRef ref;
  std::string category;  // always a scheme category
  double confidence_pct = 0.0;
  std::string explanation;
  // The model's own label when it had to be mapped onto the scheme.
  std::optional<std::string> model_category;
};

enum class ScaffoldKind { LowControl, MediumControl, HighControl, Metacognitive };

std::string_view scaffold_code(ScaffoldKind kind);  // "CS-L", "CS-M", "CS-H", "MS"
std::string_view scaffold_label(ScaffoldKind kind);  // e.g. "High-control cognitive scaffolding"
/// Accepts either the short code or the long label, case-insensitively.
std::optional<ScaffoldKind> parse_scaffold_kind(std::string_view text);
inline constexpr ScaffoldKind kAllScaffoldKinds[] = {ScaffoldKind::LowControl, ScaffoldKind::MediumControl,
                                                      ScaffoldKind::HighControl, ScaffoldKind::Metacognitive};

struct ScaffoldEvent {
  UtteranceRef ref;
  ScaffoldKind kind = ScaffoldKind::Metacognitive;
  double confidence_pct = 0.0;
  std::string explanation;
};

/// Displaced-driver placeholder in the drivers list.
inline constexpr std::string_view kNoneSentinel = "None";

enum class Role { Driver, Navigator, Monitor, None };
std::string_view role_name(Role role);

/// One complete role configuration for an utterance.
struct RoleCandidate {
  std::optional<SpeakerId> navigator;
  std::vector<SpeakerId> monitors;   // sorted
  std::vector<std::string> drivers;  // sorted; speaker ids or "None"

  auto operator<=>(const RoleCandidate&) const = default;
};

/// True when every student occupies exactly one of navigator / monitors /
/// drivers, nobody else appears, and "None" is the only non-student entry.
bool satisfies_partition(const RoleCandidate& c, std::span<const SpeakerId> students);

Role role_of(const RoleCandidate& c, std::string_view student);

struct RoleTally {
  RoleCandidate candidate;
  int votes = 0;
  double confidence_sum = 0.0;
};

struct RoleAssignment {
  UtteranceRef ref;
  RoleCandidate roles;
  int votes = 0;          // samples agreeing with the adopted configuration
  int valid_samples = 0;  // samples that produced a usable configuration
  bool uncertain = false;
  std::vector<RoleTally> candidates;  // retained when uncertain
};

struct DimensionScores {
  double problem_solving = 0.0;
  double integrity = 0.0;
  double accuracy = 0.0;
  double innovation = 0.0;

  bool operator==(const DimensionScores&) const = default;
};

inline constexpr double kWeightProblemSolving = 0.05;
inline constexpr double kWeightIntegrity = 0.35;
inline constexpr double kWeightAccuracy = 0.35;
inline constexpr double kWeightInnovation = 0.25;
inline constexpr double kWeightPercent[4] = {5, 35, 35, 25};

double weighted_total(const DimensionScores& d);

struct CodeScore {
  DimensionScores dimensions;  // mean over surviving runs
  double weighted_total = 0.0;
  std::string rationale;  // explanation text of the representative run
  std::string key_ideas;
  std::vector<std::string> demerits;
  int n_samples = 0;  // surviving runs
};

}  // namespace collabscope::annotate
