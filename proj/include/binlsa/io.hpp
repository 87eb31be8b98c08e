#ifndef BINLSA_IO_HPP
#define BINLSA_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "binlsa/segmenter.hpp"
#include "binlsa/svd.hpp"
#include "binlsa/termspace.hpp"
#include "binlsa/topics.hpp"

namespace binlsa {

/// Shortest round-trip decimal rendering of a double; stable across runs so
/// artifact files are byte-reproducible.
std::string format_double(double v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

/// FNV-1a 64-bit, hex string. Used for manifest input/artifact hashes.
std::string fnv1a_hex(std::string_view bytes);

// --- term-document matrix ---

/// Header row `group,<doc label>,...`; one row per term group with the group
/// name in the first column.
std::string termdoc_to_csv(const TermDocMatrix& m);
TermDocMatrix termdoc_from_csv(const std::string& csv);

// --- basic blocks and adjacency ---

std::string blocks_to_csv(const std::vector<BasicBlock>& blocks);

/// Row-major 0/1 values with a header row of block ids.
std::string adjacency_to_csv(const ControlFlowGraph& g);

EdgeList edges_from_json(const nlohmann::json& doc);

// --- factors ---

/// U and V as labeled CSVs (label column first), sigma as a single column.
std::string factor_to_csv(const Matrix& basis, const std::vector<std::string>& labels);
std::string sigma_to_csv(const std::vector<double>& sigma);
std::vector<double> sigma_from_csv(const std::string& csv);
Matrix factor_from_csv(const std::string& csv, std::vector<std::string>* labels);

/// Shape/rank/tolerance/sign-convention record that accompanies the factor
/// CSVs.
nlohmann::json factor_manifest(const SvdFactors& f, std::size_t input_rows,
                               std::size_t input_cols, const SvdOptions& opts);

// --- topic spaces ---

/// `label,x,y[,...]` scatter rows, directly plottable.
std::string topic_space_to_csv(const TopicSpace& space);
TopicSpace topic_space_from_csv(const std::string& csv);

nlohmann::json cfg_report_to_json(const CfgTopicReport& report);

}  // namespace binlsa

#endif  // BINLSA_IO_HPP
