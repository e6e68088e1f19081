#pragma once

#include <span>
#include <vector>

namespace collabscope::timeline {

/// Centered moving average. Near the ends the window is truncated to the
/// values that exist, so [80, 20, 80] with w = 3 gives [50, 60, 50].
/// Throws ValidationError unless `window` is odd and positive.
std::vector<double> smooth_confidences(std::span<const double> values, int window);

}  // namespace collabscope::timeline
