#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "collabscope/analytics/quality.hpp"
#include "collabscope/annotate/types.hpp"

namespace collabscope::analytics {

/// Everything the cohort views know about one group.
struct GroupProfile {
  std::string group_id;
  std::vector<corpus::SpeakerId> students;
  std::map<int, double> question_scores;  // weighted code score per question
  std::array<double, 3> engagement{};     // per student, roster order
  QualityResult quality;
  double mean_behavioral = 0.0;  // full-phase mean over students and questions
  double mean_cognitive = 0.0;
  std::array<int, 4> scaffold_counts{};  // indexed like annotate::kAllScaffoldKinds
  double duration = 0.0;                 // summed question spans, seconds
  double prior_mean = 0.0;
  std::array<double, 4> color_group_share{};  // share of student utterances per colour group
  std::vector<double> feature_vector;         // raw, in kGroupFeatureNames order
  std::vector<double> standardized;           // z-scored across the cohort
  std::optional<std::array<double, 2>> projection;

  int scaffold_total() const { return scaffold_counts[0] + scaffold_counts[1] + scaffold_counts[2] + scaffold_counts[3]; }
};

inline constexpr std::array<std::string_view, 15> kGroupFeatureNames = {
    "mean_score",          "quality",             "mean_behavioral",     "mean_cognitive",
    "engagement_cv",       "scaffold_cs_l",       "scaffold_cs_m",       "scaffold_cs_h",
    "scaffold_ms",         "duration",            "prior_mean",          "share_color_group_1",
    "share_color_group_2", "share_color_group_3", "share_color_group_4",
};

/// Raw feature vector in kGroupFeatureNames order.
std::vector<double> group_feature_vector(const GroupProfile& profile);

/// Column-wise z-scores with the population standard deviation; constant
/// columns become 0. Throws ValidationError with fewer than 2 rows or
/// ragged input.
std::vector<std::vector<double>> standardize(std::span<const std::vector<double>> rows);

nlohmann::json profile_to_json(const GroupProfile& profile);

}  // namespace collabscope::analytics
