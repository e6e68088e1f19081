#include "collabscope/timeline/runs.hpp"

namespace collabscope::timeline {

double MergedRun::duration() const {
  double d = 0.0;
  for (const auto& m : members) d += m.t1 - m.t0;
  return d;
}

std::vector<MergedRun> merge_runs(std::span<const TimedLabel> labels, RunWeighting weighting) {
  std::vector<MergedRun> runs;
  double weighted_sum = 0.0;
  double weight = 0.0;
  auto close = [&] {
    // A lone member keeps its confidence bit-for-bit.
    if (runs.back().members.size() > 1 && weight > 0.0) runs.back().mean_confidence = weighted_sum / weight;
  };
  for (const auto& l : labels) {
    if (runs.empty() || runs.back().category != l.category) {
      if (!runs.empty()) close();
      runs.push_back({l.category, l.t0, l.t1, l.confidence, {}});
      weighted_sum = 0.0;
      weight = 0.0;
    }
    auto& run = runs.back();
    run.end = l.t1;
    run.members.push_back({l.ref, l.t0, l.t1});
    const double w = weighting == RunWeighting::Duration ? l.t1 - l.t0 : 1.0;
    weighted_sum += w * l.confidence;
    weight += w;
  }
  if (!runs.empty()) close();
  return runs;
}

}  // namespace collabscope::timeline
