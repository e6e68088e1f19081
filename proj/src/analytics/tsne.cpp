#include "collabscope/analytics/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "collabscope/util/error.hpp"
#include "collabscope/util/random.hpp"

namespace collabscope::analytics {
namespace {

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& X) {
  const auto n = X.rows();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (X.row(i) - X.row(j)).squaredNorm();
      D(i, j) = d;
      D(j, i) = d;
    }
  }
  return D;
}

}  // namespace

Eigen::MatrixXd conditional_affinities(const Eigen::MatrixXd& X, double perplexity) {
  const auto n = X.rows();
  const Eigen::MatrixXd D = squared_distances(X);
  const double target = std::log(perplexity);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double beta = 1.0;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    // Shift by the smallest off-diagonal distance so exp() cannot underflow
    // to an all-zero row.
    double dmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) dmin = std::min(dmin, D(i, j));
    }
    for (int step = 0; step < 200; ++step) {
      double sum = 0.0;
      double weighted = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        const double p = std::exp(-beta * (D(i, j) - dmin));
        P(i, j) = p;
        sum += p;
        weighted += p * (D(i, j) - dmin);
      }
      const double entropy = std::log(sum) + beta * weighted / sum;
      for (Eigen::Index j = 0; j < n; ++j) P(i, j) /= sum;
      const double diff = entropy - target;
      if (std::abs(diff) < 1e-5) break;
      if (diff > 0) {
        lo = beta;
        beta = std::isinf(hi) ? beta * 2.0 : (beta + hi) / 2.0;
      } else {
        hi = beta;
        beta = (beta + lo) / 2.0;
      }
    }
  }
  return P;
}

Eigen::MatrixXd project_tsne(const Eigen::MatrixXd& X, const TsneOptions& options) {
  const auto n = X.rows();
  if (n < 4) throw ValidationError("t-SNE needs at least 4 points, got " + std::to_string(n));
  const double max_perplexity = static_cast<double>(n - 1) / 3.0;
  if (!(options.perplexity > 0.0) || options.perplexity > max_perplexity) {
    throw ValidationError("t-SNE perplexity must lie in (0, " + std::to_string(max_perplexity) + "] for " +
                          std::to_string(n) + " points");
  }
  if (!X.allFinite()) throw ValidationError("t-SNE input must be finite");

  Eigen::MatrixXd P = conditional_affinities(X, options.perplexity);
  P = (P + P.transpose()) / (2.0 * static_cast<double>(n));
  P = P.cwiseMax(1e-12);
  P.diagonal().setZero();

  util::SplitMix64 rng(options.seed);
  Eigen::MatrixXd Y(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index d = 0; d < 2; ++d) Y(i, d) = 1e-2 * rng.normal();
  }
  Eigen::MatrixXd update = Eigen::MatrixXd::Zero(n, 2);
  Eigen::MatrixXd gains = Eigen::MatrixXd::Ones(n, 2);
  Eigen::MatrixXd num(n, n);
  Eigen::MatrixXd grad(n, 2);

  for (int it = 0; it < options.iterations; ++it) {
    const double exaggeration = it < options.exaggeration_iterations ? options.early_exaggeration : 1.0;
    const double momentum = it < options.exaggeration_iterations ? 0.5 : 0.8;

    double z = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      num(i, i) = 0.0;
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double q = 1.0 / (1.0 + (Y.row(i) - Y.row(j)).squaredNorm());
        num(i, j) = q;
        num(j, i) = q;
        z += 2.0 * q;
      }
    }
    grad.setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j) continue;
        const double q = std::max(num(i, j) / z, 1e-12);
        const double m = 4.0 * (exaggeration * P(i, j) - q) * num(i, j);
        grad(i, 0) += m * (Y(i, 0) - Y(j, 0));
        grad(i, 1) += m * (Y(i, 1) - Y(j, 1));
      }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index d = 0; d < 2; ++d) {
        const bool same_sign = (grad(i, d) > 0.0) == (update(i, d) > 0.0);
        gains(i, d) = same_sign ? std::max(gains(i, d) * 0.8, 0.01) : gains(i, d) + 0.2;
        update(i, d) = momentum * update(i, d) - options.learning_rate * gains(i, d) * grad(i, d);
        Y(i, d) += update(i, d);
      }
    }
    Y.rowwise() -= Y.colwise().mean();
  }
  return Y;
}

}  // namespace collabscope::analytics
