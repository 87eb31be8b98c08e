#include "binlsa/termspace.hpp"

#include <cmath>

#include "binlsa/errors.hpp"

namespace binlsa {

std::vector<double> tf_vector(const BasicBlock& block, const TermDictionary& dict,
                              OovTally* tally) {
  std::vector<double> counts(dict.size(), 0.0);
  for (const auto& ins : block.instructions) counts[dict.stem(ins.mnemonic, tally)] += 1.0;
  return counts;
}

TermDocMatrix build_matrix(const std::vector<SegmentedProgram>& programs,
                           const TermDictionary& dict, Weighting weighting,
                           bool normalize) {
  std::size_t n_docs = 0;
  for (const auto& p : programs) n_docs += p.blocks.size();
  if (n_docs == 0) throw EmptyCorpus("no documents to assemble");

  TermDocMatrix m;
  m.term_labels = dict.groups();
  m.weighting = weighting;
  m.values = Matrix(dict.size(), n_docs);

  std::size_t col = 0;
  for (const auto& p : programs) {
    for (const auto& b : p.blocks) {
      m.doc_labels.push_back(p.name + ":" + std::to_string(b.block_id));
      const auto counts = tf_vector(b, dict);
      for (std::size_t row = 0; row < counts.size(); ++row)
        m.values(row, col) = counts[row];
      ++col;
    }
  }

  if (weighting == Weighting::TfIdf) {
    const double n = static_cast<double>(n_docs);
    for (std::size_t row = 0; row < m.rows(); ++row) {
      std::size_t df = 0;
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m.values(row, j) > 0.0) ++df;
      const double idf = df == 0 ? 0.0 : std::log(n / static_cast<double>(df));
      for (std::size_t j = 0; j < m.cols(); ++j) m.values(row, j) *= idf;
    }
  }

  if (normalize) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      double norm = 0.0;
      for (std::size_t i = 0; i < m.rows(); ++i)
        norm += m.values(i, j) * m.values(i, j);
      norm = std::sqrt(norm);
      if (norm == 0.0) continue;
      for (std::size_t i = 0; i < m.rows(); ++i) m.values(i, j) /= norm;
    }
  }
  return m;
}

double sample_skewness(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 3) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);

  double m2 = 0.0, m3 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  if (m2 == 0.0) return 0.0;

  const double g1 = m3 / std::pow(m2, 1.5);
  const double nn = static_cast<double>(n);
  return g1 * std::sqrt(nn * (nn - 1.0)) / (nn - 2.0);
}

TermStats term_stats(const TermDocMatrix& m) {
  if (m.weighting != Weighting::RawTf)
    throw InputError("term_stats is defined over raw-tf counts");

  TermStats stats;
  stats.group_totals.assign(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      stats.group_totals[i] += m.values(i, j);

  stats.skewness = sample_skewness(stats.group_totals);
  stats.top_index = 0;
  for (std::size_t i = 1; i < stats.group_totals.size(); ++i)
    if (stats.group_totals[i] > stats.group_totals[stats.top_index]) stats.top_index = i;
  stats.top_group = m.term_labels.empty() ? "" : m.term_labels[stats.top_index];
  return stats;
}

}  // namespace binlsa
