#include "collabscope/annotate/label_mapping.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "collabscope/corpus/scheme.hpp"
#include "collabscope/util/error.hpp"

namespace collabscope::annotate {
namespace {

std::string fold(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

double normalized_edit_distance(std::string_view a_raw, std::string_view b_raw) {
  const std::string a = fold(a_raw);
  const std::string b = fold(b_raw);
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return static_cast<double>(row[b.size()]) / static_cast<double>(longest);
}

MappedLabel map_to_scheme(std::string_view label, double stated_pct, const corpus::CodingScheme& scheme,
                          double threshold) {
  const std::string folded = fold(label);
  for (const auto& c : scheme.categories) {
    if (fold(c.name) == folded) return {c.name, stated_pct, false};
  }
  const corpus::Category* best = nullptr;
  double best_d = 2.0;
  for (const auto& c : scheme.categories) {
    const double d = normalized_edit_distance(label, c.name);
    if (d < best_d) {
      best_d = d;
      best = &c;
    }
  }
  if (best != nullptr && best_d <= threshold) return {best->name, stated_pct * (1.0 - best_d), true};
  if (!scheme.contains(corpus::kUnrelatedChat)) {
    throw ValidationError("scheme has no 'Unrelated chat' category to receive unmapped label '" + std::string(label) + "'");
  }
  return {std::string(corpus::kUnrelatedChat), kFallbackConfidence, true};
}

}  // namespace collabscope::annotate
