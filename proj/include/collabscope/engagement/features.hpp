#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "collabscope/annotate/types.hpp"
#include "collabscope/corpus/types.hpp"

namespace collabscope::engagement {

enum class Phase { Half, Full };
std::string_view phase_name(Phase phase);  // "half" | "full"

/// Students by row, named features by column.
struct FeatureMatrix {
  std::vector<corpus::SpeakerId> rows;
  std::vector<std::string> columns;
  Eigen::MatrixXd values;
};

/// Divides each column by its maximum; all-zero columns stay zero.
void max_normalize_columns(Eigen::MatrixXd& m);

/// The utterances of `segment` that fall in `phase` (time-midpoint split).
std::span<const corpus::Utterance> phase_utterances(const corpus::QuestionSegment& segment, Phase phase);

struct FeatureOptions {
  int cooccurrence_window = 1;
  bool normalize = true;
};

/// Columns: speaking seconds, utterance count, degree centrality. Utterances
/// labelled "Unrelated chat" are left out of all three.
FeatureMatrix behavioral_features(const corpus::QuestionSegment& segment,
                                  std::span<const annotate::BehaviorAnnotation> behaviors,
                                  std::span<const corpus::SpeakerId> students, Phase phase,
                                  const FeatureOptions& options = {});

/// Columns: one count per scheme category of the student's own utterances,
/// then how often the student held the Driver, Navigator and Monitor roles.
/// `roles` may be empty when the question has no declared driver.
FeatureMatrix cognitive_features(const corpus::QuestionSegment& segment,
                                 std::span<const annotate::BehaviorAnnotation> behaviors,
                                 std::span<const annotate::RoleAssignment> roles,
                                 std::span<const corpus::SpeakerId> students, const corpus::CodingScheme& scheme,
                                 Phase phase, const FeatureOptions& options = {});

}  // namespace collabscope::engagement
