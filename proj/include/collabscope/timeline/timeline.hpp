#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "collabscope/annotate/types.hpp"
#include "collabscope/corpus/types.hpp"
#include "collabscope/timeline/roles.hpp"
#include "collabscope/timeline/runs.hpp"
#include "collabscope/util/error.hpp"

namespace collabscope::timeline {

struct ConfidenceBar {
  UtteranceRef ref;
  double t0 = 0.0;
  double t1 = 0.0;
  std::string category;
  double raw_confidence = 0.0;
  double smoothed_confidence = 0.0;
  std::string explanation;
  std::optional<std::string> model_category;
};

struct ScaffoldMarker {
  UtteranceRef ref;
  double t0 = 0.0;
  double t1 = 0.0;
  annotate::ScaffoldKind kind = annotate::ScaffoldKind::Metacognitive;
  double confidence = 0.0;
  std::string explanation;
};

struct QuestionTimeline {
  int question_id = 0;
  std::vector<ConfidenceBar> bars;
  std::vector<MergedRun> runs;
  std::vector<RoleCell> roles;
  std::vector<ScaffoldMarker> scaffolds;
};

struct TimelineOptions {
  int smoothing_window = 3;
  RunWeighting weighting = RunWeighting::Duration;
};

/// Smooths the behavior confidences along the question, then merges equal
/// neighbours into runs. `roles` may be empty (no driver declared).
QuestionTimeline build_timeline(const corpus::QuestionSegment& segment,
                                std::span<const annotate::BehaviorAnnotation> behaviors,
                                std::span<const annotate::RoleAssignment> roles,
                                std::span<const annotate::ScaffoldEvent> scaffolds,
                                std::span<const corpus::SpeakerId> students, const TimelineOptions& options = {});

namespace detail {

inline void clip(double& t0, double& t1, double a, double b) {
  t0 = std::max(t0, a);
  t1 = std::min(t1, b);
}

inline void clip_item(ConfidenceBar& x, double a, double b) { clip(x.t0, x.t1, a, b); }
inline void clip_item(ScaffoldMarker& x, double a, double b) { clip(x.t0, x.t1, a, b); }
inline void clip_item(RoleCell& x, double a, double b) { clip(x.t0, x.t1, a, b); }
inline void clip_item(MergedRun& x, double a, double b) {
  clip(x.start, x.end, a, b);
  std::erase_if(x.members, [&](const RunMember& m) { return m.t1 <= a || m.t0 >= b; });
  for (auto& m : x.members) clip(m.t0, m.t1, a, b);
}

inline double begin_of(const MergedRun& x) { return x.start; }
inline double end_of(const MergedRun& x) { return x.end; }
template <class T>
double begin_of(const T& x) { return x.t0; }
template <class T>
double end_of(const T& x) { return x.t1; }

}  // namespace detail

/// Items overlapping the open interval (t0, t1), clipped to it. Confidences
/// are left untouched. Throws ValidationError unless t0 < t1.
template <class T>
std::vector<T> window_filter(std::span<const T> items, double t0, double t1) {
  if (!(t0 < t1)) throw ValidationError("time window must satisfy t0 < t1");
  std::vector<T> out;
  for (const auto& item : items) {
    if (detail::end_of(item) <= t0 || detail::begin_of(item) >= t1) continue;
    T clipped = item;
    detail::clip_item(clipped, t0, t1);
    out.push_back(std::move(clipped));
  }
  return out;
}

QuestionTimeline window_filter(const QuestionTimeline& timeline, double t0, double t1);

nlohmann::json timeline_to_json(const QuestionTimeline& timeline);
QuestionTimeline timeline_from_json(const nlohmann::json& doc);

}  // namespace collabscope::timeline
