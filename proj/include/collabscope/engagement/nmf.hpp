#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace collabscope::engagement {

struct NmfOptions {
  int rank = 1;
  int max_iter = 1000;
  double tol = 1e-6;  // stop once the relative change in error drops below this
  std::uint64_t seed = 0;
};

struct NmfResult {
  Eigen::MatrixXd W;  // rows x rank
  Eigen::MatrixXd H;  // rank x cols
  std::vector<double> errors;  // Frobenius error before the first and after each iteration
  int iterations = 0;
  bool converged = false;
};

/// Lee-Seung multiplicative updates for min ||X - WH||_F with W, H >= 0.
/// H starts from seeded uniform(0,1) draws; every row of W starts from the
/// same draws, so permuting the rows of X permutes the rows of W. Entries
/// whose update denominator is zero keep their value.
/// Throws ValidationError for negative or non-finite X, or a rank outside
/// [1, min(rows, cols)].
NmfResult nmf(const Eigen::MatrixXd& X, const NmfOptions& options = {});

}  // namespace collabscope::engagement
