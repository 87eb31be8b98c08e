#include "binlsa/topics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "binlsa/errors.hpp"

namespace binlsa {
namespace {

TopicSpace project(const Matrix& basis, const std::vector<double>& sigma,
                   const std::vector<std::size_t>& dims,
                   const std::vector<std::string>& labels, bool scaled,
                   SpaceSource source) {
  if (dims.empty()) throw DimOutOfRange("no topic dimensions selected");
  std::unordered_set<std::size_t> seen;
  for (std::size_t d : dims) {
    if (d >= sigma.size())
      throw DimOutOfRange("topic dim " + std::to_string(d) + " >= rank " +
                          std::to_string(sigma.size()));
    if (!seen.insert(d).second)
      throw DimOutOfRange("topic dim " + std::to_string(d) + " selected twice");
  }
  if (labels.size() != basis.rows())
    throw InputError("label count " + std::to_string(labels.size()) +
                     " does not match basis rows " + std::to_string(basis.rows()));

  TopicSpace space;
  space.dims = dims;
  space.source = source;
  space.points.reserve(labels.size());
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    TopicPoint pt;
    pt.label = labels[i];
    pt.coords.reserve(dims.size());
    for (std::size_t d : dims)
      pt.coords.push_back(basis(i, d) * (scaled ? sigma[d] : 1.0));
    space.points.push_back(std::move(pt));
  }
  return space;
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TopicSpace project_terms(const SvdFactors& f, const std::vector<std::size_t>& dims,
                         const std::vector<std::string>& labels, bool scaled) {
  return project(f.u, f.sigma, dims, labels, scaled, SpaceSource::TermSpace);
}

TopicSpace project_documents(const SvdFactors& f, const std::vector<std::size_t>& dims,
                             const std::vector<std::string>& labels, bool scaled) {
  return project(f.v, f.sigma, dims, labels, scaled, SpaceSource::DocumentSpace);
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw InputError("cosine requires equal dimensions, got " +
                     std::to_string(u.size()) + " and " + std::to_string(v.size()));
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu == 0.0) throw ZeroVector("left argument");
  if (nv == 0.0) throw ZeroVector("right argument");
  double dot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  return std::clamp(dot / (nu * nv), -1.0, 1.0);
}

SimilarResult similar_documents(const TopicSpace& space, const std::string& query,
                                std::size_t k) {
  const TopicPoint* q = nullptr;
  for (const auto& pt : space.points) {
    if (pt.label == query) {
      q = &pt;
      break;
    }
  }
  if (!q) throw UnknownLabel(query);
  if (norm(q->coords) == 0.0) throw ZeroVector("query point '" + query + "'");

  SimilarResult result;
  for (const auto& pt : space.points) {
    if (&pt == q) continue;
    if (norm(pt.coords) == 0.0) {
      result.excluded_zero.push_back(pt.label);
      continue;
    }
    result.ranked.emplace_back(pt.label, cosine(q->coords, pt.coords));
  }
  std::stable_sort(result.ranked.begin(), result.ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (result.ranked.size() > k) result.ranked.resize(k);
  return result;
}

CfgTopicReport cfg_decompose(const ControlFlowGraph& g, double threshold) {
  CfgTopicReport report;
  report.n_nodes = g.n;
  report.threshold = threshold;
  if (g.n == 0) return report;

  SvdFactors f = svd(g.adjacency);
  report.weights = f.sigma;

  // Zero-weight dimensions carry no topic; values at or below the numerical
  // rank cutoff are treated as zero.
  const double sigma_max = f.sigma.empty() ? 0.0 : f.sigma.front();
  const double zero_cut = sigma_max * static_cast<double>(g.n) *
                          std::numeric_limits<double>::epsilon();
  for (double w : report.weights)
    if (w > zero_cut && w < threshold) ++report.low_weight_count;
  report.low_weight_fraction =
      static_cast<double>(report.low_weight_count) / static_cast<double>(g.n);
  return report;
}

}  // namespace binlsa
