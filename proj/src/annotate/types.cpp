#include "collabscope/annotate/types.hpp"

#include <algorithm>
#include <cctype>

namespace collabscope::annotate {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
           return std::tolower(x) == std::tolower(y);
         });
}

}  // namespace

std::string_view scaffold_code(ScaffoldKind kind) {
  switch (kind) {
    case ScaffoldKind::LowControl: return "CS-L";
    case ScaffoldKind::MediumControl: return "CS-M";
    case ScaffoldKind::HighControl: return "CS-H";
    case ScaffoldKind::Metacognitive: return "MS";
  }
  return "MS";
}

std::string_view scaffold_label(ScaffoldKind kind) {
  switch (kind) {
    case ScaffoldKind::LowControl: return "Low-control cognitive scaffolding";
    case ScaffoldKind::MediumControl: return "Medium-control cognitive scaffolding";
    case ScaffoldKind::HighControl: return "High-control cognitive scaffolding";
    case ScaffoldKind::Metacognitive: return "Metacognitive scaffolding";
  }
  return "Metacognitive scaffolding";
}

std::optional<ScaffoldKind> parse_scaffold_kind(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  for (ScaffoldKind k : kAllScaffoldKinds) {
    if (iequals(text, scaffold_code(k)) || iequals(text, scaffold_label(k))) return k;
  }
  return std::nullopt;
}

std::string_view role_name(Role role) {
  switch (role) {
    case Role::Driver: return "Driver";
    case Role::Navigator: return "Navigator";
    case Role::Monitor: return "Monitor";
    case Role::None: return "None";
  }
  return "None";
}

bool satisfies_partition(const RoleCandidate& c, std::span<const SpeakerId> students) {
  auto is_student = [&](std::string_view id) { return std::find(students.begin(), students.end(), id) != students.end(); };
  std::vector<std::string_view> seen;
  if (c.navigator) {
    if (!is_student(*c.navigator)) return false;
    seen.push_back(*c.navigator);
  }
  for (const auto& m : c.monitors) {
    if (!is_student(m)) return false;
    seen.push_back(m);
  }
  int sentinels = 0;
  for (const auto& d : c.drivers) {
    if (d == kNoneSentinel) {
      ++sentinels;
    } else if (is_student(d)) {
      seen.push_back(d);
    } else {
      return false;
    }
  }
  if (c.drivers.empty() || (sentinels > 0 && c.drivers.size() > 1)) return false;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  return seen.size() == students.size();
}

Role role_of(const RoleCandidate& c, std::string_view student) {
  if (c.navigator && *c.navigator == student) return Role::Navigator;
  if (std::find(c.monitors.begin(), c.monitors.end(), student) != c.monitors.end()) return Role::Monitor;
  if (std::find(c.drivers.begin(), c.drivers.end(), student) != c.drivers.end()) return Role::Driver;
  return Role::None;
}

double weighted_total(const DimensionScores& d) {
  // Percent weights keep integer rubric scores exact (5,5,5,3 gives 4.5, not 4.499...).
  return (kWeightPercent[0] * d.problem_solving + kWeightPercent[1] * d.integrity + kWeightPercent[2] * d.accuracy +
          kWeightPercent[3] * d.innovation) /
         100.0;
}

}  // namespace collabscope::annotate
