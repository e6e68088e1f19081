#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "collabscope/corpus/types.hpp"

namespace collabscope::engagement {

using corpus::SpeakerId;

/// Undirected weighted turn-taking graph over the group's students.
struct CooccurrenceNetwork {
  std::vector<SpeakerId> nodes;
  std::map<std::pair<SpeakerId, SpeakerId>, double> edges;  // key ordered (a < b)

  double weight(const SpeakerId& a, const SpeakerId& b) const;
  double total_weight() const;
};

/// Links each student turn to the next `window` student turns by a different
/// speaker, one unit per pair; `window` = 1 counts adjacent turns only.
/// Utterances by anyone outside `students` are dropped before pairing.
CooccurrenceNetwork build_cooccurrence(std::span<const corpus::Utterance> utterances,
                                       std::span<const SpeakerId> students, int window = 1);

/// Weighted degree over twice the total edge weight, so the values sum to 1
/// whenever an edge exists. Without edges every node scores 0.
std::map<SpeakerId, double> degree_centrality(const CooccurrenceNetwork& net);

}  // namespace collabscope::engagement
