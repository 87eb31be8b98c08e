#ifndef BINLSA_PIPELINE_HPP
#define BINLSA_PIPELINE_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "binlsa/segmenter.hpp"
#include "binlsa/termspace.hpp"

namespace binlsa {

inline constexpr const char* kToolVersion = "binlsa 0.1.0";

struct PipelineConfig {
  std::filesystem::path dict_path;
  std::filesystem::path corpus_dir;
  std::filesystem::path output_dir;
  SegMode seg_mode = SegMode::Paper;
  bool split_on_call = false;
  Weighting weighting = Weighting::RawTf;
  bool normalize = false;
  std::vector<std::size_t> topic_dims = {0, 1};
  double low_weight_threshold = 10.0;
  bool strict_parse = false;
  bool scaled_projection = true;
  bool raw_terms = false;      // raw-vocabulary mode instead of stem groups
  bool canonical_dict = true;  // require exactly 32 groups

  nlohmann::json to_json() const;
  /// Overlay values present in `doc` onto this config (file layer of the
  /// flags > config file > defaults precedence).
  void apply_json(const nlohmann::json& doc);
};

struct ProgramReport {
  std::string name;
  std::size_t instructions = 0;
  std::size_t blocks = 0;
  std::size_t oov_hits = 0;
  std::size_t skipped_lines = 0;
  std::string error;  // empty on success; failed programs carry a marker
};

struct RunManifest {
  std::string version;
  nlohmann::json config;
  std::vector<ProgramReport> programs;
  std::vector<std::string> artifacts;                 // paths relative to output_dir
  std::map<std::string, std::string> input_hashes;    // corpus file -> fnv64
  std::map<std::string, std::string> artifact_hashes; // artifact -> fnv64
  bool ok = true;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& doc);
};

/// Corpus files: *.asm/*.s/*.txt/*.dis listings and *.json bundles, sorted
/// by filename; "<name>.edges.json" files ride along as external CFG edges.
std::vector<std::filesystem::path> discover_corpus(const std::filesystem::path& dir);

/// parse -> segment -> tf per program; corpus matrix -> SVD -> topic spaces;
/// per-program CFG decomposition. All artifacts land under cfg.output_dir
/// and the manifest is both written and returned. Programs that fail to
/// parse are recorded as failure markers; the run aborts only when nothing
/// parses at all.
RunManifest run_pipeline(const PipelineConfig& cfg);

/// Human-readable summary of a completed run: top-weight table, term
/// distribution, per-program CFG low-weight fractions. Verifies that every
/// artifact listed in the manifest still exists (MissingArtifact).
std::string render_report(const std::filesystem::path& output_dir);

}  // namespace binlsa

#endif  // BINLSA_PIPELINE_HPP
