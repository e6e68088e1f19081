#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "collabscope/engagement/features.hpp"
#include "collabscope/engagement/nmf.hpp"

namespace collabscope::engagement {

struct EngagementPoint {
  corpus::SpeakerId student;
  int question_id = 0;
  Phase phase = Phase::Full;
  double behavioral = 0.0;
  double cognitive = 0.0;
};

struct EngagementOptions {
  FeatureOptions features;
  int max_iter = 1000;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  int sg_window = 5;
  int sg_polyorder = 2;
};

/// Rank-1 NMF row factor of `X`, scaled so the largest entry is 1. An
/// all-zero matrix scores all zeros.
std::vector<double> rank1_scores(const Eigen::MatrixXd& X, int max_iter, double tol, std::uint64_t seed);

/// Behavioral and cognitive engagement of each student at the half and full
/// phase of the question: 2 points per student, half first, roster order.
std::vector<EngagementPoint> engagement_scores(const corpus::QuestionSegment& segment,
                                               std::span<const annotate::BehaviorAnnotation> behaviors,
                                               std::span<const annotate::RoleAssignment> roles,
                                               std::span<const corpus::SpeakerId> students,
                                               const corpus::CodingScheme& scheme, const EngagementOptions& options = {});

/// One student's engagement along the session, ordered by question then
/// phase, raw and Savitzky-Golay smoothed.
struct EngagementSeries {
  corpus::SpeakerId student;
  std::vector<double> behavioral;
  std::vector<double> cognitive;
  std::vector<double> smoothed_behavioral;
  std::vector<double> smoothed_cognitive;
};

struct GroupEngagement {
  std::vector<corpus::SpeakerId> students;
  std::vector<EngagementPoint> points;
  std::vector<EngagementSeries> series;
};

/// Collects per-question points (in question order) into per-student curves.
GroupEngagement summarize_engagement(std::span<const corpus::SpeakerId> students,
                                     std::vector<EngagementPoint> points, int sg_window = 5, int sg_polyorder = 2);

nlohmann::json engagement_to_json(const GroupEngagement& g);
GroupEngagement engagement_from_json(const nlohmann::json& doc);

}  // namespace collabscope::engagement
