#include "collabscope/engagement/cooccurrence.hpp"

#include <algorithm>

#include "collabscope/util/error.hpp"

namespace collabscope::engagement {
namespace {

std::pair<SpeakerId, SpeakerId> edge_key(const SpeakerId& a, const SpeakerId& b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

}  // namespace

double CooccurrenceNetwork::weight(const SpeakerId& a, const SpeakerId& b) const {
  const auto it = edges.find(edge_key(a, b));
  return it == edges.end() ? 0.0 : it->second;
}

double CooccurrenceNetwork::total_weight() const {
  double total = 0.0;
  for (const auto& [_, w] : edges) total += w;
  return total;
}

CooccurrenceNetwork build_cooccurrence(std::span<const corpus::Utterance> utterances,
                                       std::span<const SpeakerId> students, int window) {
  if (window < 1) throw ValidationError("co-occurrence window must be at least 1");
  CooccurrenceNetwork net;
  net.nodes.assign(students.begin(), students.end());
  std::vector<const SpeakerId*> turns;
  for (const auto& u : utterances) {
    if (std::find(students.begin(), students.end(), u.speaker) != students.end()) turns.push_back(&u.speaker);
  }
  for (std::size_t i = 0; i < turns.size(); ++i) {
    const std::size_t last = std::min(turns.size() - 1, i + static_cast<std::size_t>(window));
    for (std::size_t j = i + 1; j <= last; ++j) {
      if (*turns[i] != *turns[j]) net.edges[edge_key(*turns[i], *turns[j])] += 1.0;
    }
  }
  return net;
}

std::map<SpeakerId, double> degree_centrality(const CooccurrenceNetwork& net) {
  std::map<SpeakerId, double> degree;
  for (const auto& n : net.nodes) degree[n] = 0.0;
  const double total = net.total_weight();
  if (total == 0.0) return degree;
  for (const auto& [key, w] : net.edges) {
    degree[key.first] += w;
    degree[key.second] += w;
  }
  for (auto& [_, d] : degree) d /= 2.0 * total;
  return degree;
}

}  // namespace collabscope::engagement
