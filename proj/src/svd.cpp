#include "binlsa/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "binlsa/errors.hpp"

namespace binlsa {
namespace {

// One-sided Jacobi for m >= n: rotate column pairs of a working copy until
// all pairs are mutually orthogonal, accumulating the rotations into V.
// Column norms then give the singular values and the normalized columns the
// left basis.
struct TallFactors {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;
};

TallFactors jacobi_tall(const Matrix& a, const SvdOptions& opts) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix w = a;
  Matrix v = Matrix::identity(n);

  bool converged = (n <= 1);
  int sweeps = 0;
  while (!converged && sweeps < opts.max_sweeps) {
    ++sweeps;
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double wpp = 0.0, wqq = 0.0, wpq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double xp = w(i, p), xq = w(i, q);
          wpp += xp * xp;
          wqq += xq * xq;
          wpq += xp * xq;
        }
        if (wpq == 0.0) continue;
        if (std::abs(wpq) <= opts.tolerance * std::sqrt(wpp) * std::sqrt(wqq))
          continue;

        converged = false;
        const double zeta = (wqq - wpp) / (2.0 * wpq);
        // For |zeta| beyond double range fall back to the small-angle limit
        // t ~ 1/(2 zeta) so the sweep still makes progress.
        const double t = std::isfinite(zeta)
                             ? (zeta >= 0.0 ? 1.0 : -1.0) /
                                   (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta))
                             : wpq / (wqq - wpp);
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double xp = w(i, p), xq = w(i, q);
          w(i, p) = c * xp - s * xq;
          w(i, q) = s * xp + c * xq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
  }
  if (!converged) throw NoConvergence(sweeps);

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += w(i, j) * w(i, j);
    norms[j] = std::sqrt(s);
  }

  // Descending order, stable so equal values keep their column order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  TallFactors out;
  out.sigma.resize(n);
  out.u = Matrix(m, n);
  out.v = Matrix(n, n);

  const double sigma_max = norms[order[0]];
  const double zero_tol =
      sigma_max * static_cast<double>(std::max(m, n)) * std::numeric_limits<double>::epsilon();

  std::vector<std::size_t> deficient;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = norms[j];
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, j);
    if (norms[j] > zero_tol && norms[j] > 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.u(i, k) = w(i, j) / norms[j];
    } else {
      deficient.push_back(k);
    }
  }

  // Numerically zero columns: complete the left basis with unit vectors
  // orthogonal to the columns already placed. Unfilled slots are zero
  // vectors and project to nothing, so filling in order just works. The
  // standard basis vector with the largest residual is chosen, which is
  // deterministic (lowest index wins ties).
  for (std::size_t k : deficient) {
    std::vector<double> residual_norm2(m, 1.0);
    for (std::size_t col = 0; col < n; ++col)
      for (std::size_t i = 0; i < m; ++i)
        residual_norm2[i] -= out.u(i, col) * out.u(i, col);
    std::size_t best = 0;
    for (std::size_t i = 1; i < m; ++i)
      if (residual_norm2[i] > residual_norm2[best]) best = i;

    std::vector<double> cand(m, 0.0);
    cand[best] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t col = 0; col < n; ++col) {
        if (col == k) continue;
        double dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += cand[i] * out.u(i, col);
        for (std::size_t i = 0; i < m; ++i) cand[i] -= dot * out.u(i, col);
      }
      double norm = 0.0;
      for (double x : cand) norm += x * x;
      norm = std::sqrt(norm);
      for (double& x : cand) x /= norm;
    }
    for (std::size_t i = 0; i < m; ++i) out.u(i, k) = cand[i];
  }

  return out;
}

void apply_sign_convention(Matrix& u, Matrix& v) {
  for (std::size_t j = 0; j < u.cols(); ++j) {
    std::size_t arg = 0;
    double best = std::abs(u(0, j));
    for (std::size_t i = 1; i < u.rows(); ++i) {
      const double mag = std::abs(u(i, j));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (u(arg, j) < 0.0) {
      for (std::size_t i = 0; i < u.rows(); ++i) u(i, j) = -u(i, j);
      for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) = -v(i, j);
    }
  }
}

}  // namespace

SvdFactors svd(const Matrix& a, const SvdOptions& opts) {
  if (a.rows() == 0 || a.cols() == 0)
    throw InputError("svd requires a non-empty matrix");
  std::size_t bad_row = 0, bad_col = 0;
  if (!a.all_finite(&bad_row, &bad_col)) throw NonFiniteInput(bad_row, bad_col);

  SvdFactors f;
  if (a.rows() >= a.cols()) {
    TallFactors t = jacobi_tall(a, opts);
    f.u = std::move(t.u);
    f.sigma = std::move(t.sigma);
    f.v = std::move(t.v);
  } else {
    TallFactors t = jacobi_tall(a.transposed(), opts);
    f.u = std::move(t.v);
    f.sigma = std::move(t.sigma);
    f.v = std::move(t.u);
  }
  apply_sign_convention(f.u, f.v);
  return f;
}

SvdFactors truncate(const SvdFactors& f, std::size_t k) {
  if (k < 1 || k > f.rank()) throw RankOutOfRange(k, f.rank());
  SvdFactors out;
  out.sigma.assign(f.sigma.begin(), f.sigma.begin() + static_cast<long>(k));
  out.u = Matrix(f.u.rows(), k);
  out.v = Matrix(f.v.rows(), k);
  for (std::size_t i = 0; i < f.u.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) out.u(i, j) = f.u(i, j);
  for (std::size_t i = 0; i < f.v.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) out.v(i, j) = f.v(i, j);
  return out;
}

TopicWeights topic_weights(const SvdFactors& f) {
  TopicWeights tw;
  tw.weights = f.sigma;
  double total = 0.0;
  for (double s : f.sigma) total += s * s;
  tw.cumulative_variance.reserve(f.sigma.size());
  double running = 0.0;
  for (double s : f.sigma) {
    running += s * s;
    tw.cumulative_variance.push_back(total == 0.0 ? 0.0 : running / total);
  }
  return tw;
}

Matrix reconstruct(const SvdFactors& f) {
  Matrix scaled = f.u;  // columns scaled by sigma
  for (std::size_t j = 0; j < scaled.cols(); ++j)
    for (std::size_t i = 0; i < scaled.rows(); ++i) scaled(i, j) *= f.sigma[j];
  return scaled.multiply(f.v.transposed());
}

}  // namespace binlsa
