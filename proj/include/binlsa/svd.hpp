#ifndef BINLSA_SVD_HPP
#define BINLSA_SVD_HPP

#include <cstddef>
#include <vector>

#include "binlsa/matrix.hpp"

namespace binlsa {

/// A = U * diag(sigma) * V^T with orthonormal U (m x r) and V (n x r),
/// sigma descending and non-negative, r = min(m, n) unless truncated.
///
/// Deterministic sign convention: in each column of U the entry of largest
/// magnitude is non-negative (ties broken by lowest row index); V's column
/// is flipped along with U's so the product is preserved.
struct SvdFactors {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;

  std::size_t rank() const { return sigma.size(); }
};

struct SvdOptions {
  // One-sided Jacobi: a column pair counts as orthogonal once
  // |<wp, wq>| <= tolerance * ||wp|| * ||wq||; a sweep with no rotations
  // means convergence. The cap guards against stagnation.
  double tolerance = 1e-12;
  int max_sweeps = 100;
};

/// Full SVD of a dense real matrix by one-sided Jacobi rotations.
/// Throws NonFiniteInput for NaN/inf entries and NoConvergence if the sweep
/// cap is exhausted.
SvdFactors svd(const Matrix& a, const SvdOptions& opts = {});

/// Keep the k highest-weighted dimensions (best rank-k approximation).
/// Throws RankOutOfRange unless 1 <= k <= rank.
SvdFactors truncate(const SvdFactors& f, std::size_t k);

/// Singular values restated as topic strengths.
struct TopicWeights {
  std::vector<double> weights;              // = sigma
  std::vector<double> cumulative_variance;  // prefix sums of sigma^2 / total
};

TopicWeights topic_weights(const SvdFactors& f);

/// U * diag(sigma) * V^T, for reconstruction-error checks.
Matrix reconstruct(const SvdFactors& f);

}  // namespace binlsa

#endif  // BINLSA_SVD_HPP
