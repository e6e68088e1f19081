#include "collabscope/engagement/engagement.hpp"

#include <algorithm>

#include "collabscope/engagement/savitzky_golay.hpp"
#include "collabscope/util/error.hpp"
#include "collabscope/util/random.hpp"

namespace collabscope::engagement {

std::vector<double> rank1_scores(const Eigen::MatrixXd& X, int max_iter, double tol, std::uint64_t seed) {
  std::vector<double> scores(static_cast<std::size_t>(X.rows()), 0.0);
  if (X.size() == 0 || X.isZero(0.0)) return scores;
  const auto fit = nmf(X, {1, max_iter, tol, seed});
  // W alone is defined only up to the scale moved into H.
  if (fit.H.isZero(0.0)) return scores;
  const double mx = fit.W.col(0).maxCoeff();
  if (mx <= 0.0) return scores;
  for (Eigen::Index i = 0; i < X.rows(); ++i) scores[static_cast<std::size_t>(i)] = fit.W(i, 0) / mx;
  return scores;
}

std::vector<EngagementPoint> engagement_scores(const corpus::QuestionSegment& segment,
                                               std::span<const annotate::BehaviorAnnotation> behaviors,
                                               std::span<const annotate::RoleAssignment> roles,
                                               std::span<const corpus::SpeakerId> students,
                                               const corpus::CodingScheme& scheme, const EngagementOptions& options) {
  std::vector<EngagementPoint> points;
  for (Phase phase : {Phase::Half, Phase::Full}) {
    const auto task = util::mix_seed(options.seed, static_cast<std::uint64_t>(segment.question_id) * 2 +
                                                       (phase == Phase::Full ? 1 : 0));
    const auto beh = behavioral_features(segment, behaviors, students, phase, options.features);
    const auto cog = cognitive_features(segment, behaviors, roles, students, scheme, phase, options.features);
    const auto b = rank1_scores(beh.values, options.max_iter, options.tol, util::mix_seed(task, 1));
    const auto c = rank1_scores(cog.values, options.max_iter, options.tol, util::mix_seed(task, 2));
    for (std::size_t i = 0; i < students.size(); ++i) {
      points.push_back({students[i], segment.question_id, phase, b[i], c[i]});
    }
  }
  return points;
}

GroupEngagement summarize_engagement(std::span<const corpus::SpeakerId> students,
                                     std::vector<EngagementPoint> points, int sg_window, int sg_polyorder) {
  GroupEngagement g;
  g.students.assign(students.begin(), students.end());
  std::stable_sort(points.begin(), points.end(), [](const EngagementPoint& a, const EngagementPoint& b) {
    if (a.question_id != b.question_id) return a.question_id < b.question_id;
    return a.phase == Phase::Half && b.phase == Phase::Full;
  });
  g.points = std::move(points);
  for (const auto& s : students) {
    EngagementSeries series;
    series.student = s;
    for (const auto& p : g.points) {
      if (p.student != s) continue;
      series.behavioral.push_back(p.behavioral);
      series.cognitive.push_back(p.cognitive);
    }
    series.smoothed_behavioral = smooth_engagement_curve(series.behavioral, sg_window, sg_polyorder);
    series.smoothed_cognitive = smooth_engagement_curve(series.cognitive, sg_window, sg_polyorder);
    g.series.push_back(std::move(series));
  }
  return g;
}

nlohmann::json engagement_to_json(const GroupEngagement& g) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : g.points) {
    points.push_back({{"student", p.student},
                      {"q", p.question_id},
                      {"phase", phase_name(p.phase)},
                      {"behavioral", p.behavioral},
                      {"cognitive", p.cognitive}});
  }
  nlohmann::json smoothed = nlohmann::json::array();
  for (const auto& s : g.series) {
    smoothed.push_back({{"student", s.student},
                        {"behavioral", s.smoothed_behavioral},
                        {"cognitive", s.smoothed_cognitive}});
  }
  return {{"students", g.students}, {"points", points}, {"smoothed", smoothed}};
}

GroupEngagement engagement_from_json(const nlohmann::json& doc) {
  GroupEngagement g;
  try {
    g.students = doc.at("students").get<std::vector<corpus::SpeakerId>>();
    for (const auto& p : doc.at("points")) {
      g.points.push_back({p.at("student").get<std::string>(), p.at("q").get<int>(),
                          p.at("phase").get<std::string>() == "half" ? Phase::Half : Phase::Full,
                          p.at("behavioral").get<double>(), p.at("cognitive").get<double>()});
    }
    for (const auto& s : doc.at("smoothed")) {
      EngagementSeries series;
      series.student = s.at("student").get<std::string>();
      series.smoothed_behavioral = s.at("behavioral").get<std::vector<double>>();
      series.smoothed_cognitive = s.at("cognitive").get<std::vector<double>>();
      for (const auto& p : g.points) {
        if (p.student != series.student) continue;
        series.behavioral.push_back(p.behavioral);
        series.cognitive.push_back(p.cognitive);
      }
      g.series.push_back(std::move(series));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("engagement document: ") + e.what());
  }
  return g;
}

}  // namespace collabscope::engagement
