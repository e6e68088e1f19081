#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace collabscope::ena {

/// Behavior co-occurrence network over one or more questions.
struct BehaviorNetwork {
  std::map<std::string, double> nodes;                             // category -> annotation count
  std::map<std::pair<std::string, std::string>, double> edges;     // key ordered (a < b)
  std::vector<int> questions;
  int window = 4;

  double edge(const std::string& a, const std::string& b) const;
  bool operator==(const BehaviorNetwork&) const = default;
};

/// Slides a window of `k` consecutive annotations along the sequence; each
/// distinct pair of categories inside a window adds 1 to its edge. A
/// sequence shorter than `k` forms a single window. Throws ValidationError
/// for k < 2.
BehaviorNetwork build_behavior_network(std::span<const std::string> categories, int k);

/// Sums the per-question networks of the selected questions; windows never
/// cross from one question into the next. Throws ValidationError for a
/// question id absent from `by_question`.
BehaviorNetwork network_for_range(const std::map<int, std::vector<std::string>>& by_question,
                                  std::span<const int> questions, int k);

struct NormalizedNetwork {
  BehaviorNetwork raw;
  std::map<std::string, double> node_norm;
  std::map<std::pair<std::string, std::string>, double> edge_norm;
};

/// Scales node counts and edge weights by their own maxima.
NormalizedNetwork normalize_network(const BehaviorNetwork& net);

/// Side-by-side pair, each normalized independently.
std::pair<NormalizedNetwork, NormalizedNetwork> compare_networks(const BehaviorNetwork& a, const BehaviorNetwork& b);

nlohmann::json network_to_json(const NormalizedNetwork& net);

}  // namespace collabscope::ena
