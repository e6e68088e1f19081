#include "collabscope/analytics/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "collabscope/util/error.hpp"

namespace collabscope::analytics {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("vectors differ in length");
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) ss += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(ss);
}

SimilarityResult rank_similarity(const std::string& target, std::span<const std::string> ids,
                                 std::span<const std::vector<double>> vectors) {
  if (ids.size() != vectors.size()) throw ValidationError("ids and vectors differ in count");
  const auto t = std::find(ids.begin(), ids.end(), target);
  if (t == ids.end()) throw ValidationError("unknown group '" + target + "'");
  if (ids.size() < 3) throw ValidationError("similarity ranking needs at least 2 other groups");
  const auto& tv = vectors[static_cast<std::size_t>(t - ids.begin())];

  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });

  SimilarityResult r;
  r.target = target;
  bool first = true;
  for (std::size_t i : order) {
    if (ids[i] == target) continue;
    const double d = euclidean_distance(tv, vectors[i]);
    if (first || d < r.most_similar.distance) r.most_similar = {ids[i], d};
    if (first || d > r.most_different.distance) r.most_different = {ids[i], d};
    first = false;
  }
  return r;
}

}  // namespace collabscope::analytics
