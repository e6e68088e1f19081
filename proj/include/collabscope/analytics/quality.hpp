#pragma once

#include <map>
#include <span>
#include <vector>

#include "collabscope/engagement/engagement.hpp"

namespace collabscope::analytics {

struct QualityResult {
  double mean_score = 0.0;       // s-bar
  double mean_engagement = 0.0;  // e-bar
  double sigma_e = 0.0;          // population standard deviation
  double cv_e = 0.0;
  double quality = 0.0;          // s-bar * (1 - cv_e)
};

/// Collaboration quality from question scores and per-student engagement.
/// Throws ValidationError for empty scores, negative engagement, or an
/// all-zero engagement vector ("engagement undefined").
QualityResult collaboration_quality(std::span<const double> scores, std::span<const double> engagement);

/// Per-student engagement that enters the quality measure: the sum over
/// questions of the full-phase (behavioral + cognitive) / 2.
std::map<corpus::SpeakerId, double> student_engagement_totals(std::span<const engagement::EngagementPoint> points);

}  // namespace collabscope::analytics
