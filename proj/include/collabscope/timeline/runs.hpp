#pragma once

#include <span>
#include <string>
#include <vector>

#include "collabscope/corpus/types.hpp"

namespace collabscope::timeline {

using corpus::UtteranceRef;

/// An annotated time span: the unit the timeline draws as a bar.
struct TimedLabel {
  UtteranceRef ref;
  double t0 = 0.0;
  double t1 = 0.0;
  std::string category;
  double confidence = 0.0;
};

struct RunMember {
  UtteranceRef ref;
  double t0 = 0.0;
  double t1 = 0.0;

  bool operator==(const RunMember&) const = default;
};

struct MergedRun {
  std::string category;
  double start = 0.0;
  double end = 0.0;
  double mean_confidence = 0.0;
  std::vector<RunMember> members;

  /// Time actually spoken inside the run (gaps between members excluded).
  double duration() const;
};

enum class RunWeighting { Duration, Unweighted };

/// Collapses maximal stretches of equal category. The run spans from its
/// first member's start to its last member's end; its confidence is the
/// member mean, weighted by member duration unless `Unweighted`.
std::vector<MergedRun> merge_runs(std::span<const TimedLabel> labels, RunWeighting weighting = RunWeighting::Duration);

}  // namespace collabscope::timeline
