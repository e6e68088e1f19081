#include "collabscope/timeline/smoothing.hpp"

#include <algorithm>
#include <string>

#include "collabscope/util/error.hpp"

namespace collabscope::timeline {

std::vector<double> smooth_confidences(std::span<const double> values, int window) {
  if (window < 1 || window % 2 == 0) {
    throw ValidationError("smoothing window must be a positive odd integer, got " + std::to_string(window));
  }
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  const std::ptrdiff_t half = window / 2;
  std::vector<double> out(values.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
    const std::ptrdiff_t hi = std::min(n - 1, i + half);
    double sum = 0.0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) sum += values[static_cast<std::size_t>(j)];
    const double mean = sum / static_cast<double>(hi - lo + 1);
    // Rounding can push a constant window's mean one ulp outside its range.
    const auto [mn, mx] = std::minmax_element(values.begin() + lo, values.begin() + hi + 1);
    out[static_cast<std::size_t>(i)] = std::clamp(mean, *mn, *mx);
  }
  return out;
}

}  // namespace collabscope::timeline
