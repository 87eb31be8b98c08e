#ifndef BINLSA_TERMSPACE_HPP
#define BINLSA_TERMSPACE_HPP

#include <string>
#include <vector>

#include "binlsa/lexicon.hpp"
#include "binlsa/matrix.hpp"
#include "binlsa/segmenter.hpp"

namespace binlsa {

enum class Weighting { RawTf, TfIdf };

/// Term-document co-occurrence matrix: rows are stem groups, columns are
/// basic-block documents. SVD's left factor U then spans term space and the
/// right factor V spans document space.
struct TermDocMatrix {
  std::vector<std::string> term_labels;  // group names, row order
  std::vector<std::string> doc_labels;   // "program:block_id", column order
  Matrix values;
  Weighting weighting = Weighting::RawTf;

  std::size_t rows() const { return values.rows(); }
  std::size_t cols() const { return values.cols(); }
};

/// Bag-of-words count vector over stem groups; sums to the block's
/// instruction count and is invariant to instruction order.
std::vector<double> tf_vector(const BasicBlock& block, const TermDictionary& dict,
                              OovTally* tally = nullptr);

/// One segmented program of the corpus.
struct SegmentedProgram {
  std::string name;
  std::vector<BasicBlock> blocks;
};

/// Assemble the corpus matrix, columns in corpus order. TfIdf multiplies row
/// t by ln(N / df_t); a group present in every document gets a zero row, a
/// group present in none stays zero. `normalize` rescales each nonzero
/// column to unit Euclidean length after weighting.
/// Throws EmptyCorpus when there is no document.
TermDocMatrix build_matrix(const std::vector<SegmentedProgram>& programs,
                           const TermDictionary& dict,
                           Weighting weighting = Weighting::RawTf,
                           bool normalize = false);

/// Corpus term-distribution statistics over a raw-tf matrix.
struct TermStats {
  std::vector<double> group_totals;  // one per group, sums to corpus size
  double skewness = 0.0;             // adjusted Fisher-Pearson sample skewness
  std::string top_group;
  std::size_t top_index = 0;
};

TermStats term_stats(const TermDocMatrix& m);

/// Adjusted Fisher-Pearson sample skewness; 0 when the variance vanishes or
/// fewer than three values are given.
double sample_skewness(const std::vector<double>& values);

}  // namespace binlsa

#endif  // BINLSA_TERMSPACE_HPP
