#include "collabscope/engagement/features.hpp"

#include <algorithm>

#include "collabscope/corpus/scheme.hpp"
#include "collabscope/corpus/transcript.hpp"
#include "collabscope/engagement/cooccurrence.hpp"
#include "collabscope/util/error.hpp"

namespace collabscope::engagement {
namespace {

std::ptrdiff_t row_of(std::span<const corpus::SpeakerId> students, const corpus::SpeakerId& s) {
  const auto it = std::find(students.begin(), students.end(), s);
  return it == students.end() ? -1 : it - students.begin();
}

void require_behaviors(const corpus::QuestionSegment& segment, std::span<const annotate::BehaviorAnnotation> behaviors) {
  if (behaviors.size() != segment.utterances.size()) {
    throw ValidationError("question " + std::to_string(segment.question_id) +
                          ": behavior annotations missing for engagement features");
  }
}

}  // namespace

std::string_view phase_name(Phase phase) { return phase == Phase::Half ? "half" : "full"; }

void max_normalize_columns(Eigen::MatrixXd& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const double mx = m.col(c).maxCoeff();
    if (mx > 0.0) m.col(c) /= mx;
  }
}

std::span<const corpus::Utterance> phase_utterances(const corpus::QuestionSegment& segment, Phase phase) {
  std::span<const corpus::Utterance> all(segment.utterances);
  if (phase == Phase::Full || all.empty()) return all;
  return all.first(corpus::first_half_count(segment));
}

FeatureMatrix behavioral_features(const corpus::QuestionSegment& segment,
                                  std::span<const annotate::BehaviorAnnotation> behaviors,
                                  std::span<const corpus::SpeakerId> students, Phase phase,
                                  const FeatureOptions& options) {
  require_behaviors(segment, behaviors);
  FeatureMatrix fm;
  fm.rows.assign(students.begin(), students.end());
  fm.columns = {"speaking_seconds", "utterance_count", "degree_centrality"};
  fm.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(students.size()), 3);

  const auto utts = phase_utterances(segment, phase);
  std::vector<corpus::Utterance> kept;
  for (std::size_t i = 0; i < utts.size(); ++i) {
    if (behaviors[i].category == corpus::kUnrelatedChat) continue;
    const auto r = row_of(students, utts[i].speaker);
    if (r < 0) continue;
    fm.values(r, 0) += utts[i].duration();
    fm.values(r, 1) += 1.0;
    kept.push_back(utts[i]);
  }
  const auto centrality = degree_centrality(build_cooccurrence(kept, students, options.cooccurrence_window));
  for (std::size_t r = 0; r < students.size(); ++r) {
    fm.values(static_cast<Eigen::Index>(r), 2) = centrality.at(students[r]);
  }
  if (options.normalize) max_normalize_columns(fm.values);
  return fm;
}

FeatureMatrix cognitive_features(const corpus::QuestionSegment& segment,
                                 std::span<const annotate::BehaviorAnnotation> behaviors,
                                 std::span<const annotate::RoleAssignment> roles,
                                 std::span<const corpus::SpeakerId> students, const corpus::CodingScheme& scheme,
                                 Phase phase, const FeatureOptions& options) {
  require_behaviors(segment, behaviors);
  if (!roles.empty() && roles.size() != segment.utterances.size()) {
    throw ValidationError("question " + std::to_string(segment.question_id) + ": role annotations incomplete");
  }
  const auto n_cat = static_cast<Eigen::Index>(scheme.size());
  FeatureMatrix fm;
  fm.rows.assign(students.begin(), students.end());
  for (const auto& c : scheme.categories) fm.columns.push_back(c.name);
  fm.columns.insert(fm.columns.end(), {"Driver", "Navigator", "Monitor"});
  fm.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(students.size()), n_cat + 3);

  const auto utts = phase_utterances(segment, phase);
  for (std::size_t i = 0; i < utts.size(); ++i) {
    const auto r = row_of(students, utts[i].speaker);
    if (r < 0) continue;
    const auto cat = scheme.index_of(behaviors[i].category);
    if (!cat) throw ValidationError("category '" + behaviors[i].category + "' is not in the coding scheme");
    fm.values(r, static_cast<Eigen::Index>(*cat)) += 1.0;
  }
  if (!roles.empty()) {
    for (std::size_t i = 0; i < utts.size(); ++i) {
      for (std::size_t r = 0; r < students.size(); ++r) {
        const auto role = annotate::role_of(roles[i].roles, students[r]);
        if (role == annotate::Role::None) continue;
        fm.values(static_cast<Eigen::Index>(r), n_cat + static_cast<Eigen::Index>(role)) += 1.0;
      }
    }
  }
  if (options.normalize) max_normalize_columns(fm.values);
  return fm;
}

}  // namespace collabscope::engagement
