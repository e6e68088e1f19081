#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace collabscope::analytics {

struct TsneOptions {
  double perplexity = 5.0;
  int iterations = 1000;
  double learning_rate = 100.0;
  std::uint64_t seed = 0;
  double early_exaggeration = 12.0;
  int exaggeration_iterations = 250;
};

/// Exact t-SNE of the rows of `X` into two dimensions (Gaussian input
/// affinities calibrated to the perplexity, Student-t output kernel,
/// momentum and adaptive gains). The result is centred and depends only on
/// (X, options). Throws ValidationError for fewer than 4 rows or a
/// perplexity outside (0, (n-1)/3].
Eigen::MatrixXd project_tsne(const Eigen::MatrixXd& X, const TsneOptions& options = {});

/// Row-stochastic input affinities P(j|i) for the given perplexity.
Eigen::MatrixXd conditional_affinities(const Eigen::MatrixXd& X, double perplexity);

}  // namespace collabscope::analytics
