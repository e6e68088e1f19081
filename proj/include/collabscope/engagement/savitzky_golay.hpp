#pragma once

#include <span>
#include <vector>

namespace collabscope::engagement {

/// Least-squares smoothing weights for the centre of a `window`-point
/// polynomial fit of degree `polyorder`; (5, 2) gives (-3, 12, 17, 12, -3)/35.
std::vector<double> savgol_coefficients(int window, int polyorder);

/// Savitzky-Golay filter. Interior points use the symmetric coefficients;
/// the first and last window/2 points are read off a polynomial fitted to
/// the first or last window. Series shorter than the window come back
/// unchanged. Throws ValidationError unless window is odd and positive and
/// 0 <= polyorder < window.
std::vector<double> smooth_engagement_curve(std::span<const double> series, int window = 5, int polyorder = 2);

}  // namespace collabscope::engagement
