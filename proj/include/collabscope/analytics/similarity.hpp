#pragma once

#include <span>
#include <string>
#include <vector>

namespace collabscope::analytics {

struct Neighbor {
  std::string group_id;
  double distance = 0.0;
};

struct SimilarityResult {
  std::string target;
  Neighbor most_similar;
  Neighbor most_different;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Nearest and farthest other group by Euclidean distance. Equal distances
/// resolve to the smaller group id. Throws ValidationError when the target
/// is unknown, vectors differ in length, or fewer than 2 other groups exist.
SimilarityResult rank_similarity(const std::string& target, std::span<const std::string> ids,
                                 std::span<const std::vector<double>> vectors);

}  // namespace collabscope::analytics
