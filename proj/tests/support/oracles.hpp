// Test-only oracles, kept independent of the library's decomposition path:
// singular values come from two-sided Jacobi eigenvalues of the Gram matrix,
// similarity rankings from a direct all-pairs scan.
#ifndef BINLSA_TESTS_ORACLES_HPP
#define BINLSA_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "binlsa/matrix.hpp"
#include "binlsa/topics.hpp"

namespace oracles {

/// Eigenvalues of a symmetric matrix by classical two-sided Jacobi,
/// descending. No shared code with binlsa::svd.
inline std::vector<double> sym_eigenvalues(binlsa::Matrix s, int max_sweeps = 200) {
  const std::size_t n = s.rows();
  const double scale = s.frobenius_norm();

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * s(p, q) * s(p, q);
    if (std::sqrt(off) <= 1e-14 * (1.0 + scale)) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (s(p, q) == 0.0) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = c * t;
        // S <- J^T S J applied to full rows/columns p and q
        for (std::size_t i = 0; i < n; ++i) {
          const double sip = s(i, p), siq = s(i, q);
          s(i, p) = c * sip - sn * siq;
          s(i, q) = sn * sip + c * siq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const double spj = s(p, j), sqj = s(q, j);
          s(p, j) = c * spj - sn * sqj;
          s(q, j) = sn * spj + c * sqj;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = s(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

/// Singular values of A as square roots of Gram-matrix eigenvalues, using
/// whichever Gram product is smaller.
inline std::vector<double> gram_singular_values(const binlsa::Matrix& a) {
  const binlsa::Matrix gram = a.rows() <= a.cols()
                                  ? a.multiply(a.transposed())
                                  : a.transposed().multiply(a);
  auto eig = sym_eigenvalues(gram);
  std::vector<double> sigma(eig.size());
  for (std::size_t i = 0; i < eig.size(); ++i)
    sigma[i] = std::sqrt(std::max(0.0, eig[i]));
  return sigma;
}

/// Cosine by normalize-then-dot, deliberately a different formulation from
/// the library's dot-over-norms.
inline double cosine_ref(const std::vector<double>& u, const std::vector<double>& v) {
  double nu = 0.0, nv = 0.0;
  for (double x : u) nu += x * x;
  for (double x : v) nv += x * x;
  nu = std::sqrt(nu);
  nv = std::sqrt(nv);
  double dot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += (u[i] / nu) * (v[i] / nv);
  return std::clamp(dot, -1.0, 1.0);
}

/// All-pairs ranking against a query point; same exclusion and tie rules the
/// contract states (zero points out, ties keep point order).
inline std::vector<std::pair<std::string, double>> brute_force_ranking(
    const binlsa::TopicSpace& space, const std::string& query, std::size_t k) {
  const binlsa::TopicPoint* q = nullptr;
  for (const auto& pt : space.points)
    if (pt.label == query) {
      q = &pt;
      break;
    }
  std::vector<std::pair<std::string, double>> ranked;
  for (const auto& pt : space.points) {
    if (&pt == q) continue;
    double norm = 0.0;
    for (double c : pt.coords) norm += c * c;
    if (norm == 0.0) continue;
    ranked.emplace_back(pt.label, cosine_ref(q->coords, pt.coords));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

inline binlsa::Matrix random_matrix(std::size_t rows, std::size_t cols,
                                    std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  binlsa::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

/// ||M^T M - I||_F
inline double orthonormality_error(const binlsa::Matrix& m) {
  const binlsa::Matrix gram = m.transposed().multiply(m);
  double err = 0.0;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) {
      const double d = gram(i, j) - (i == j ? 1.0 : 0.0);
      err += d * d;
    }
  return std::sqrt(err);
}

inline double relative_reconstruction_error(const binlsa::Matrix& a,
                                            const binlsa::Matrix& rec) {
  double num = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double d = a(i, j) - rec(i, j);
      num += d * d;
    }
  const double den = a.frobenius_norm();
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num) / den;
}

}  // namespace oracles

#endif  // BINLSA_TESTS_ORACLES_HPP
