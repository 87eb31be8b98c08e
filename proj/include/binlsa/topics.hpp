#ifndef BINLSA_TOPICS_HPP
#define BINLSA_TOPICS_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "binlsa/segmenter.hpp"
#include "binlsa/svd.hpp"

namespace binlsa {

enum class SpaceSource { TermSpace, DocumentSpace };

struct TopicPoint {
  std::string label;
  std::vector<double> coords;
};

/// Low-dimensional coordinates of terms or documents in selected topic
/// dimensions, compared by cosine similarity.
struct TopicSpace {
  std::vector<std::size_t> dims;
  std::vector<TopicPoint> points;
  SpaceSource source = SpaceSource::TermSpace;
};

/// Term projection: point i gets coordinates U[i, d] * sigma[d] for each
/// selected dim d (weight-scaled; pass scaled = false for the bare basis).
/// Throws DimOutOfRange for invalid or repeated dims.
TopicSpace project_terms(const SvdFactors& f, const std::vector<std::size_t>& dims,
                         const std::vector<std::string>& labels, bool scaled = true);

/// Document projection: as project_terms with V in place of U.
TopicSpace project_documents(const SvdFactors& f, const std::vector<std::size_t>& dims,
                             const std::vector<std::string>& labels, bool scaled = true);

/// u . v / (||u|| ||v||), clamped to [-1, 1] against rounding.
/// Throws ZeroVector when either norm vanishes.
double cosine(std::span<const double> u, std::span<const double> v);

struct SimilarResult {
  std::vector<std::pair<std::string, double>> ranked;  // label, cosine, descending
  std::vector<std::string> excluded_zero;              // zero-vector points left out
};

/// Top-k neighbours of the query point by cosine, descending; ties keep the
/// space's point order. k larger than the population returns everything.
/// Throws UnknownLabel / ZeroVector.
SimilarResult similar_documents(const TopicSpace& space, const std::string& query,
                                std::size_t k);

/// Topic-weight distribution of a control-flow adjacency matrix.
struct CfgTopicReport {
  std::size_t n_nodes = 0;
  std::vector<double> weights;        // singular values of the adjacency
  std::size_t low_weight_count = 0;   // weights in (0, threshold)
  double low_weight_fraction = 0.0;   // low_weight_count / n_nodes
  double threshold = 10.0;
};

/// Decompose the adjacency and count the low-weight (but nonzero) topics.
/// Weights below the numerical-rank cutoff count as zero and are excluded.
CfgTopicReport cfg_decompose(const ControlFlowGraph& g, double threshold = 10.0);

}  // namespace binlsa

#endif  // BINLSA_TOPICS_HPP
