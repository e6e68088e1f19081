#include "collabscope/engagement/savitzky_golay.hpp"

#include <string>

#include <Eigen/Dense>

#include "collabscope/util/error.hpp"

namespace collabscope::engagement {
namespace {

void check(int window, int polyorder) {
  if (window < 1 || window % 2 == 0 || polyorder < 0 || polyorder >= window) {
    throw ValidationError("Savitzky-Golay needs an odd window > polyorder >= 0 (got window " + std::to_string(window) +
                          ", polyorder " + std::to_string(polyorder) + ")");
  }
}

/// Vandermonde matrix over offsets x = first..first+window-1.
Eigen::MatrixXd vandermonde(int window, int polyorder, int first) {
  Eigen::MatrixXd A(window, polyorder + 1);
  for (int i = 0; i < window; ++i) {
    double p = 1.0;
    for (int j = 0; j <= polyorder; ++j) {
      A(i, j) = p;
      p *= static_cast<double>(first + i);
    }
  }
  return A;
}

/// Rows of the returned matrix map window samples to fitted values at each
/// position of the window.
Eigen::MatrixXd fit_operator(int window, int polyorder) {
  const Eigen::MatrixXd A = vandermonde(window, polyorder, 0);
  const Eigen::MatrixXd pinv = (A.transpose() * A).ldlt().solve(A.transpose());
  return A * pinv;
}

}  // namespace

std::vector<double> savgol_coefficients(int window, int polyorder) {
  check(window, polyorder);
  const int half = window / 2;
  const Eigen::MatrixXd A = vandermonde(window, polyorder, -half);
  // The fitted value at offset 0 is the constant term of the fit.
  const Eigen::MatrixXd pinv = (A.transpose() * A).ldlt().solve(A.transpose());
  std::vector<double> c(static_cast<std::size_t>(window));
  for (int i = 0; i < window; ++i) c[static_cast<std::size_t>(i)] = pinv(0, i);
  return c;
}

std::vector<double> smooth_engagement_curve(std::span<const double> series, int window, int polyorder) {
  check(window, polyorder);
  const auto n = static_cast<int>(series.size());
  std::vector<double> out(series.begin(), series.end());
  if (n < window) return out;
  const int half = window / 2;
  const auto coeff = savgol_coefficients(window, polyorder);
  for (int i = half; i < n - half; ++i) {
    double acc = 0.0;
    for (int j = 0; j < window; ++j) acc += coeff[static_cast<std::size_t>(j)] * series[static_cast<std::size_t>(i - half + j)];
    out[static_cast<std::size_t>(i)] = acc;
  }
  const Eigen::MatrixXd fit = fit_operator(window, polyorder);
  Eigen::VectorXd head(window), tail(window);
  for (int j = 0; j < window; ++j) {
    head(j) = series[static_cast<std::size_t>(j)];
    tail(j) = series[static_cast<std::size_t>(n - window + j)];
  }
  const Eigen::VectorXd head_fit = fit * head;
  const Eigen::VectorXd tail_fit = fit * tail;
  for (int i = 0; i < half; ++i) {
    out[static_cast<std::size_t>(i)] = head_fit(i);
    out[static_cast<std::size_t>(n - half + i)] = tail_fit(window - half + i);
  }
  return out;
}

}  // namespace collabscope::engagement
