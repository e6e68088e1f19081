#include "collabscope/engagement/nmf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "collabscope/util/error.hpp"
#include "collabscope/util/random.hpp"

namespace collabscope::engagement {
namespace {

// uniform(0,1) without the zero endpoint: a zero factor entry could never
// leave zero under multiplicative updates.
double open_uniform(util::SplitMix64& rng) {
  double u = rng.uniform();
  while (u == 0.0) u = rng.uniform();
  return u;
}

void multiplicative_step(Eigen::MatrixXd& F, const Eigen::MatrixXd& num, const Eigen::MatrixXd& den) {
  for (Eigen::Index j = 0; j < F.cols(); ++j) {
    for (Eigen::Index i = 0; i < F.rows(); ++i) {
      if (den(i, j) > 0.0) F(i, j) *= num(i, j) / den(i, j);
    }
  }
}

}  // namespace

NmfResult nmf(const Eigen::MatrixXd& X, const NmfOptions& options) {
  const auto rows = X.rows();
  const auto cols = X.cols();
  if (options.rank < 1 || options.rank > std::min(rows, cols)) {
    throw ValidationError("NMF rank " + std::to_string(options.rank) + " must lie in [1, min(rows, cols)]");
  }
  if (!X.allFinite() || (X.size() > 0 && X.minCoeff() < 0.0)) {
    throw ValidationError("NMF input must be finite and non-negative");
  }
  if (options.max_iter < 0 || !(options.tol >= 0.0)) throw ValidationError("NMF max_iter and tol must be non-negative");

  const auto k = static_cast<Eigen::Index>(options.rank);
  util::SplitMix64 rng(options.seed);
  NmfResult r;
  r.H.resize(k, cols);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index j = 0; j < cols; ++j) r.H(a, j) = open_uniform(rng);
  }
  Eigen::RowVectorXd w0(k);
  for (Eigen::Index a = 0; a < k; ++a) w0(a) = open_uniform(rng);
  r.W = w0.replicate(rows, 1);

  r.errors.push_back((X - r.W * r.H).norm());
  for (int it = 0; it < options.max_iter; ++it) {
    const Eigen::MatrixXd WtX = r.W.transpose() * X;
    const Eigen::MatrixXd WtWH = (r.W.transpose() * r.W) * r.H;
    multiplicative_step(r.H, WtX, WtWH);
    const Eigen::MatrixXd XHt = X * r.H.transpose();
    const Eigen::MatrixXd WHHt = r.W * (r.H * r.H.transpose());
    multiplicative_step(r.W, XHt, WHHt);

    const double prev = r.errors.back();
    const double err = (X - r.W * r.H).norm();
    r.errors.push_back(err);
    r.iterations = it + 1;
    if (err == 0.0 || (prev > 0.0 && std::abs(prev - err) / prev < options.tol)) {
      r.converged = true;
      break;
    }
  }
  return r;
}

}  // namespace collabscope::engagement
