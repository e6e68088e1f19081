#pragma once

#include <string>
#include <string_view>

#include "collabscope/corpus/types.hpp"

namespace collabscope::annotate {

/// Levenshtein distance over case-folded bytes divided by the longer length.
/// Two empty strings are at distance 0.
double normalized_edit_distance(std::string_view a, std::string_view b);

inline constexpr double kMappingThreshold = 0.5;
inline constexpr double kFallbackConfidence = 50.0;

struct MappedLabel {
  std::string category;
  double confidence_pct = 0.0;
  bool mapped = false;  // the model's label was not a scheme name
};

/// Places a model label onto the scheme. Exact (case-insensitive) matches
/// pass through. Otherwise the nearest name within `threshold` is taken and
/// the stated confidence is scaled by (1 - distance); beyond the threshold
/// the label becomes "Unrelated chat" at 50%. Ties go to the earlier scheme
/// entry.
MappedLabel map_to_scheme(std::string_view label, double stated_pct, const corpus::CodingScheme& scheme,
                          double threshold = kMappingThreshold);

}  // namespace collabscope::annotate
