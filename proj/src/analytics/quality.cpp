#include "collabscope/analytics/quality.hpp"

#include <cmath>

#include "collabscope/util/error.hpp"

namespace collabscope::analytics {

QualityResult collaboration_quality(std::span<const double> scores, std::span<const double> engagement) {
  if (scores.empty()) throw ValidationError("collaboration quality needs at least one question score");
  if (engagement.empty()) throw ValidationError("engagement undefined: no students");
  QualityResult r;
  for (double s : scores) r.mean_score += s;
  r.mean_score /= static_cast<double>(scores.size());
  for (double e : engagement) {
    if (!(e >= 0.0)) throw ValidationError("engagement values must be non-negative");
    r.mean_engagement += e;
  }
  const double n = static_cast<double>(engagement.size());
  r.mean_engagement /= n;
  if (r.mean_engagement == 0.0) throw ValidationError("engagement undefined: all students have zero engagement");
  double ss = 0.0;
  for (double e : engagement) ss += (e - r.mean_engagement) * (e - r.mean_engagement);
  r.sigma_e = std::sqrt(ss / n);
  r.cv_e = r.sigma_e / r.mean_engagement;
  r.quality = r.mean_score * (1.0 - r.cv_e);
  return r;
}

std::map<corpus::SpeakerId, double> student_engagement_totals(std::span<const engagement::EngagementPoint> points) {
  std::map<corpus::SpeakerId, double> totals;
  for (const auto& p : points) {
    auto& t = totals[p.student];
    if (p.phase == engagement::Phase::Full) t += (p.behavioral + p.cognitive) / 2.0;
  }
  return totals;
}

}  // namespace collabscope::analytics
