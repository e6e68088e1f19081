#include "collabscope/ena/network.hpp"

#include <algorithm>
#include <set>

#include "collabscope/util/error.hpp"

namespace collabscope::ena {
namespace {

void accumulate(BehaviorNetwork& into, std::span<const std::string> seq, int k) {
  for (const auto& c : seq) into.nodes[c] += 1.0;
  if (seq.empty()) return;
  const std::size_t width = std::min(seq.size(), static_cast<std::size_t>(k));
  for (std::size_t start = 0; start + width <= seq.size(); ++start) {
    const std::set<std::string> present(seq.begin() + static_cast<std::ptrdiff_t>(start),
                                        seq.begin() + static_cast<std::ptrdiff_t>(start + width));
    for (auto a = present.begin(); a != present.end(); ++a) {
      for (auto b = std::next(a); b != present.end(); ++b) into.edges[{*a, *b}] += 1.0;
    }
  }
}

void check_window(int k) {
  if (k < 2) throw ValidationError("network window must be at least 2, got " + std::to_string(k));
}

}  // namespace

double BehaviorNetwork::edge(const std::string& a, const std::string& b) const {
  const auto it = edges.find(a < b ? std::pair{a, b} : std::pair{b, a});
  return it == edges.end() ? 0.0 : it->second;
}

BehaviorNetwork build_behavior_network(std::span<const std::string> categories, int k) {
  check_window(k);
  BehaviorNetwork net;
  net.window = k;
  accumulate(net, categories, k);
  return net;
}

BehaviorNetwork network_for_range(const std::map<int, std::vector<std::string>>& by_question,
                                  std::span<const int> questions, int k) {
  check_window(k);
  BehaviorNetwork net;
  net.window = k;
  const std::set<int> selected(questions.begin(), questions.end());
  for (int q : selected) {
    const auto it = by_question.find(q);
    if (it == by_question.end()) throw ValidationError("unknown question " + std::to_string(q));
    accumulate(net, it->second, k);
  }
  net.questions.assign(selected.begin(), selected.end());
  return net;
}

NormalizedNetwork normalize_network(const BehaviorNetwork& net) {
  NormalizedNetwork out;
  out.raw = net;
  double node_max = 0.0;
  for (const auto& [_, f] : net.nodes) node_max = std::max(node_max, f);
  double edge_max = 0.0;
  for (const auto& [_, w] : net.edges) edge_max = std::max(edge_max, w);
  for (const auto& [c, f] : net.nodes) out.node_norm[c] = node_max > 0.0 ? f / node_max : 0.0;
  for (const auto& [e, w] : net.edges) out.edge_norm[e] = edge_max > 0.0 ? w / edge_max : 0.0;
  return out;
}

std::pair<NormalizedNetwork, NormalizedNetwork> compare_networks(const BehaviorNetwork& a, const BehaviorNetwork& b) {
  return {normalize_network(a), normalize_network(b)};
}

nlohmann::json network_to_json(const NormalizedNetwork& net) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& [c, f] : net.raw.nodes) nodes.push_back({{"category", c}, {"freq", f}, {"norm", net.node_norm.at(c)}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [e, w] : net.raw.edges) {
    edges.push_back({{"a", e.first}, {"b", e.second}, {"w", w}, {"norm", net.edge_norm.at(e)}});
  }
  return {{"nodes", nodes}, {"edges", edges}, {"range", net.raw.questions}, {"k", net.raw.window}};
}

}  // namespace collabscope::ena
