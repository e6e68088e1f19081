#include "collabscope/analytics/features.hpp"

#include <cmath>

#include "collabscope/util/error.hpp"

namespace collabscope::analytics {

std::vector<double> group_feature_vector(const GroupProfile& p) {
  std::vector<double> v = {p.quality.mean_score, p.quality.quality, p.mean_behavioral, p.mean_cognitive,
                           p.quality.cv_e};
  for (int c : p.scaffold_counts) v.push_back(static_cast<double>(c));
  v.push_back(p.duration);
  v.push_back(p.prior_mean);
  for (double s : p.color_group_share) v.push_back(s);
  return v;
}

std::vector<std::vector<double>> standardize(std::span<const std::vector<double>> rows) {
  if (rows.size() < 2) throw ValidationError("standardization needs at least 2 groups");
  const std::size_t dims = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != dims) throw ValidationError("feature vectors differ in length");
  }
  const double n = static_cast<double>(rows.size());
  std::vector<std::vector<double>> out(rows.size(), std::vector<double>(dims, 0.0));
  for (std::size_t d = 0; d < dims; ++d) {
    double mean = 0.0;
    for (const auto& r : rows) mean += r[d];
    mean /= n;
    double ss = 0.0;
    for (const auto& r : rows) ss += (r[d] - mean) * (r[d] - mean);
    const double sd = std::sqrt(ss / n);
    if (sd == 0.0) continue;
    for (std::size_t i = 0; i < rows.size(); ++i) out[i][d] = (rows[i][d] - mean) / sd;
  }
  return out;
}

nlohmann::json profile_to_json(const GroupProfile& p) {
  nlohmann::json scores = nlohmann::json::object();
  for (const auto& [q, s] : p.question_scores) scores[std::to_string(q)] = s;
  nlohmann::json scaffolds = nlohmann::json::object();
  for (std::size_t i = 0; i < 4; ++i) {
    scaffolds[std::string(annotate::scaffold_code(annotate::kAllScaffoldKinds[i]))] = p.scaffold_counts[i];
  }
  nlohmann::json features = nlohmann::json::object();
  for (std::size_t i = 0; i < p.feature_vector.size() && i < kGroupFeatureNames.size(); ++i) {
    features[std::string(kGroupFeatureNames[i])] = p.feature_vector[i];
  }
  nlohmann::json j = {{"group_id", p.group_id},
                      {"students", p.students},
                      {"question_scores", scores},
                      {"mean_score", p.quality.mean_score},
                      {"engagement", p.engagement},
                      {"sigma_e", p.quality.sigma_e},
                      {"cv_e", p.quality.cv_e},
                      {"quality", p.quality.quality},
                      {"mean_behavioral", p.mean_behavioral},
                      {"mean_cognitive", p.mean_cognitive},
                      {"scaffold_counts", scaffolds},
                      {"duration", p.duration},
                      {"prior_performance", p.prior_mean},
                      {"color_group_share", p.color_group_share},
                      {"features", features},
                      {"standardized", p.standardized}};
  j["projection"] = p.projection ? nlohmann::json(*p.projection) : nlohmann::json(nullptr);
  return j;
}

}  // namespace collabscope::analytics
