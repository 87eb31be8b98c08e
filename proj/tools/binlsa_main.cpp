// binlsa — segmented term-frequency and control-flow analysis of
// disassembled binaries, with SVD topic decomposition on top.
//
// Subcommands mirror the pipeline stages so each is testable on its own:
//   dict validate | segment | tf | svd | project | similar | cfg | run | report

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "binlsa/errors.hpp"
#include "binlsa/io.hpp"
#include "binlsa/parse.hpp"
#include "binlsa/pipeline.hpp"
#include "binlsa/svd.hpp"
#include "binlsa/topics.hpp"

#ifndef BINLSA_DEFAULT_DICT
#define BINLSA_DEFAULT_DICT "data/stemmap32.json"
#endif

namespace {

using binlsa::PipelineConfig;

struct CommonFlags {
  std::string config_path;
  std::string dict;
  std::string corpus;
  std::string out = "out";
  std::string seg_mode;
  std::string weighting;
  std::string dims;
  double threshold = 10.0;
  bool strict = false;
  bool split_on_call = false;
  bool normalize = false;
  bool unscaled = false;
  bool raw = false;
  bool free_dict = false;

  CLI::Option* seg_mode_opt = nullptr;
  CLI::Option* weighting_opt = nullptr;
  CLI::Option* dims_opt = nullptr;
  CLI::Option* threshold_opt = nullptr;
  CLI::Option* strict_opt = nullptr;
  CLI::Option* split_opt = nullptr;
  CLI::Option* normalize_opt = nullptr;
  CLI::Option* unscaled_opt = nullptr;
  CLI::Option* raw_opt = nullptr;
  CLI::Option* free_opt = nullptr;
  CLI::Option* dict_opt = nullptr;
  CLI::Option* corpus_opt = nullptr;
  CLI::Option* out_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path,
                  "JSON config file (default: $BINLSA_CONFIG)");
  f.dict_opt = cmd->add_option("--dict", f.dict, "stem-map config path");
  f.corpus_opt = cmd->add_option("--corpus", f.corpus, "corpus directory");
  f.out_opt = cmd->add_option("--out", f.out, "output directory");
  f.seg_mode_opt = cmd->add_option("--seg-mode", f.seg_mode,
                                   "segmentation mode: paper|leaders");
  f.weighting_opt =
      cmd->add_option("--weighting", f.weighting, "matrix weighting: tf|tfidf");
  f.dims_opt = cmd->add_option("--dims", f.dims, "topic dims, e.g. 0,1");
  f.threshold_opt =
      cmd->add_option("--threshold", f.threshold, "low-weight threshold");
  f.strict_opt = cmd->add_flag("--strict", f.strict, "strict parsing");
  f.split_opt = cmd->add_flag("--split-on-call", f.split_on_call,
                              "treat call as a block terminator");
  f.normalize_opt =
      cmd->add_flag("--normalize", f.normalize, "unit-normalize matrix columns");
  f.unscaled_opt = cmd->add_flag("--unscaled", f.unscaled,
                                 "project bare bases instead of U*diag(sigma)");
  f.raw_opt = cmd->add_flag("--raw", f.raw, "raw opcode vocabulary (no stemming)");
  f.free_opt = cmd->add_flag("--free-groups", f.free_dict,
                             "allow a non-canonical group count");
}

std::vector<std::size_t> parse_dims(const std::string& s) {
  std::vector<std::size_t> dims;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) dims.push_back(std::stoul(cur));
      cur.clear();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      cur += c;
    } else {
      throw binlsa::InputError("bad --dims value: " + s);
    }
  }
  if (dims.empty()) throw binlsa::InputError("bad --dims value: " + s);
  return dims;
}

// flags > config file > built-in defaults
PipelineConfig resolve_config(const CommonFlags& f) {
  PipelineConfig cfg;
  cfg.dict_path = BINLSA_DEFAULT_DICT;

  std::string config_path = f.config_path;
  if (config_path.empty()) {
    if (const char* env = std::getenv("BINLSA_CONFIG")) config_path = env;
  }
  if (!config_path.empty())
    cfg.apply_json(nlohmann::json::parse(binlsa::read_file(config_path)));

  if (f.dict_opt->count()) cfg.dict_path = f.dict;
  if (f.corpus_opt->count()) cfg.corpus_dir = f.corpus;
  if (f.out_opt->count() || cfg.output_dir.empty()) cfg.output_dir = f.out;
  if (f.seg_mode_opt->count())
    cfg.seg_mode = f.seg_mode == "leaders" ? binlsa::SegMode::Leaders
                   : f.seg_mode == "paper"
                       ? binlsa::SegMode::Paper
                       : throw binlsa::InputError("unknown --seg-mode " + f.seg_mode);
  if (f.weighting_opt->count()) {
    if (f.weighting == "tf" || f.weighting == "raw-tf")
      cfg.weighting = binlsa::Weighting::RawTf;
    else if (f.weighting == "tfidf" || f.weighting == "tf-idf")
      cfg.weighting = binlsa::Weighting::TfIdf;
    else
      throw binlsa::InputError("unknown --weighting " + f.weighting);
  }
  if (f.dims_opt->count()) cfg.topic_dims = parse_dims(f.dims);
  if (f.threshold_opt->count()) cfg.low_weight_threshold = f.threshold;
  if (f.strict_opt->count()) cfg.strict_parse = true;
  if (f.split_opt->count()) cfg.split_on_call = true;
  if (f.normalize_opt->count()) cfg.normalize = true;
  if (f.unscaled_opt->count()) cfg.scaled_projection = false;
  if (f.raw_opt->count()) cfg.raw_terms = true;
  if (f.free_opt->count()) cfg.canonical_dict = false;
  return cfg;
}

binlsa::TermDictionary load_dict(const PipelineConfig& cfg) {
  auto dict = binlsa::load_dictionary_file(cfg.dict_path, cfg.canonical_dict);
  return cfg.raw_terms ? binlsa::expand_raw(dict) : dict;
}

struct ParsedCorpus {
  std::vector<binlsa::SegmentedProgram> programs;
  std::vector<binlsa::ControlFlowGraph> graphs;
};

ParsedCorpus parse_corpus(const PipelineConfig& cfg, const binlsa::TermDictionary& dict) {
  ParsedCorpus out;
  const auto files = binlsa::discover_corpus(cfg.corpus_dir);
  if (files.empty()) throw binlsa::EmptyCorpus(cfg.corpus_dir.string());
  for (const auto& file : files) {
    binlsa::ProgramSource src;
    const std::string raw = binlsa::read_file(file);
    if (file.extension() == ".json") {
      src = binlsa::parse_bundle(nlohmann::json::parse(raw));
      src.name = file.stem().string();
    } else {
      src = binlsa::parse_disasm(raw, file.stem().string(),
                                 binlsa::ParseOptions{cfg.strict_parse});
    }
    auto blocks =
        binlsa::segment(src, dict, {cfg.seg_mode, cfg.split_on_call});

    std::optional<binlsa::EdgeList> edges;
    const auto edge_file = file.parent_path() / (file.stem().string() + ".edges.json");
    if (std::filesystem::exists(edge_file))
      edges = binlsa::edges_from_json(
          nlohmann::json::parse(binlsa::read_file(edge_file)));
    out.graphs.push_back(binlsa::build_cfg(blocks, edges));
    out.programs.push_back({src.name, std::move(blocks)});
  }
  return out;
}

int cmd_dict_validate(const CommonFlags& f) {
  const PipelineConfig cfg = resolve_config(f);
  auto dict = binlsa::load_dictionary_file(cfg.dict_path, cfg.canonical_dict);
  std::printf("dictionary: %s\n", cfg.dict_path.string().c_str());
  std::printf("groups: %zu (oov sink: %s)\n", dict.size(), dict.oov_group().c_str());
  std::printf("raw terms: %zu\n", dict.raw_terms().size());
  if (cfg.raw_terms) {
    auto raw = binlsa::expand_raw(dict);
    std::printf("raw-mode dimensionality: %zu\n", raw.size());
  }
  std::printf("ok\n");
  return 0;
}

int cmd_segment(const CommonFlags& f) {
  const PipelineConfig cfg = resolve_config(f);
  const auto dict = load_dict(cfg);
  const auto corpus = parse_corpus(cfg, dict);
  for (std::size_t i = 0; i < corpus.programs.size(); ++i) {
    const auto& p = corpus.programs[i];
    std::size_t n_ins = 0;
    for (const auto& b : p.blocks) n_ins += b.instructions.size();
    const std::string base = "programs/" + p.name + "/";
    binlsa::write_file(cfg.output_dir / (base + "blocks.csv"),
                       binlsa::blocks_to_csv(p.blocks));
    binlsa::write_file(cfg.output_dir / (base + "adjacency.csv"),
                       binlsa::adjacency_to_csv(corpus.graphs[i]));
    std::printf("%s: %zu instructions -> %zu blocks\n", p.name.c_str(), n_ins,
                p.blocks.size());
  }
  return 0;
}

int cmd_tf(const CommonFlags& f) {
  const PipelineConfig cfg = resolve_config(f);
  const auto dict = load_dict(cfg);
  const auto corpus = parse_corpus(cfg, dict);
  const auto matrix =
      binlsa::build_matrix(corpus.programs, dict, cfg.weighting, cfg.normalize);
  binlsa::write_file(cfg.output_dir / "termdoc.csv", binlsa::termdoc_to_csv(matrix));
  std::printf("termdoc.csv: %zu terms x %zu documents\n", matrix.rows(),
              matrix.cols());
  if (cfg.weighting == binlsa::Weighting::RawTf && !cfg.normalize) {
    const auto stats = binlsa::term_stats(matrix);
    std::printf("top group: %s, skewness %.4f\n", stats.top_group.c_str(),
                stats.skewness);
  }
  return 0;
}

int cmd_svd(const CommonFlags& f, const std::string& input) {
  const PipelineConfig cfg = resolve_config(f);
  const std::filesystem::path in =
      input.empty() ? cfg.output_dir / "termdoc.csv" : std::filesystem::path(input);
  const auto matrix = binlsa::termdoc_from_csv(binlsa::read_file(in));
  const binlsa::SvdOptions opts;
  const auto factors = binlsa::svd(matrix.values, opts);
  binlsa::write_file(cfg.output_dir / "factors/U.csv",
                     binlsa::factor_to_csv(factors.u, matrix.term_labels));
  binlsa::write_file(cfg.output_dir / "factors/sigma.csv",
                     binlsa::sigma_to_csv(factors.sigma));
  binlsa::write_file(cfg.output_dir / "factors/V.csv",
                     binlsa::factor_to_csv(factors.v, matrix.doc_labels));
  binlsa::write_file(
      cfg.output_dir / "factors/factors.json",
      binlsa::factor_manifest(factors, matrix.rows(), matrix.cols(), opts).dump(2) +
          "\n");
  const auto tw = binlsa::topic_weights(factors);
  std::printf("rank %zu; top weights:", factors.rank());
  for (std::size_t i = 0; i < std::min<std::size_t>(5, tw.weights.size()); ++i)
    std::printf(" %.4f", tw.weights[i]);
  std::printf("\n");
  return 0;
}

int cmd_project(const CommonFlags& f, const std::string& space) {
  const PipelineConfig cfg = resolve_config(f);
  std::vector<std::string> labels;
  const bool term_space = space != "doc";
  const auto basis = binlsa::factor_from_csv(
      binlsa::read_file(cfg.output_dir / (term_space ? "factors/U.csv"
                                                     : "factors/V.csv")),
      &labels);
  const auto sigma =
      binlsa::sigma_from_csv(binlsa::read_file(cfg.output_dir / "factors/sigma.csv"));
  binlsa::SvdFactors factors;
  factors.sigma = sigma;
  if (term_space) {
    factors.u = basis;
    factors.v = binlsa::Matrix(1, sigma.size());
  } else {
    factors.v = basis;
    factors.u = binlsa::Matrix(1, sigma.size());
  }
  const auto projected =
      term_space
          ? binlsa::project_terms(factors, cfg.topic_dims, labels,
                                  cfg.scaled_projection)
          : binlsa::project_documents(factors, cfg.topic_dims, labels,
                                      cfg.scaled_projection);
  const std::string rel = term_space ? "topics/term_space.csv" : "topics/doc_space.csv";
  binlsa::write_file(cfg.output_dir / rel, binlsa::topic_space_to_csv(projected));
  std::printf("%s: %zu points in %zu dims\n", rel.c_str(), projected.points.size(),
              projected.dims.size());
  return 0;
}

int cmd_similar(const CommonFlags& f, const std::string& space_path,
                const std::string& query, std::size_t k) {
  const PipelineConfig cfg = resolve_config(f);
  const std::filesystem::path path =
      space_path.empty() ? cfg.output_dir / "topics/doc_space.csv"
                         : std::filesystem::path(space_path);
  const auto space = binlsa::topic_space_from_csv(binlsa::read_file(path));
  const auto result = binlsa::similar_documents(space, query, k);
  for (const auto& [label, sim] : result.ranked)
    std::printf("%s\t%.6f\n", label.c_str(), sim);
  if (!result.excluded_zero.empty())
    std::fprintf(stderr, "excluded %zu zero-vector points\n",
                 result.excluded_zero.size());
  return 0;
}

int cmd_cfg(const CommonFlags& f) {
  const PipelineConfig cfg = resolve_config(f);
  const auto dict = load_dict(cfg);
  const auto corpus = parse_corpus(cfg, dict);
  for (std::size_t i = 0; i < corpus.programs.size(); ++i) {
    const auto& name = corpus.programs[i].name;
    const auto report =
        binlsa::cfg_decompose(corpus.graphs[i], cfg.low_weight_threshold);
    binlsa::write_file(cfg.output_dir / ("programs/" + name + "/cfg_report.json"),
                       binlsa::cfg_report_to_json(report).dump(2) + "\n");
    std::printf("%s: %zu nodes, %zu low-weight topics (fraction %.3f)\n",
                name.c_str(), report.n_nodes, report.low_weight_count,
                report.low_weight_fraction);
  }
  return 0;
}

int cmd_run(const CommonFlags& f) {
  const PipelineConfig cfg = resolve_config(f);
  const auto manifest = binlsa::run_pipeline(cfg);
  std::size_t blocks = 0, instructions = 0;
  for (const auto& p : manifest.programs) {
    blocks += p.blocks;
    instructions += p.instructions;
  }
  std::printf("%zu programs, %zu instructions, %zu blocks\n",
              manifest.programs.size(), instructions, blocks);
  std::printf("%zu artifacts under %s\n", manifest.artifacts.size(),
              cfg.output_dir.string().c_str());
  for (const auto& p : manifest.programs)
    if (!p.error.empty())
      std::fprintf(stderr, "FAILED %s: %s\n", p.name.c_str(), p.error.c_str());
  return manifest.ok ? 0 : 2;
}

int cmd_report(const CommonFlags& f) {
  const PipelineConfig cfg = resolve_config(f);
  std::fputs(binlsa::render_report(cfg.output_dir).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"segmented term-frequency / SVD topic analysis for disassembled "
               "binaries"};
  app.require_subcommand(1);

  CommonFlags flags[9];
  auto* dict_cmd = app.add_subcommand("dict", "dictionary utilities");
  dict_cmd->require_subcommand(1);
  auto* dict_validate =
      dict_cmd->add_subcommand("validate", "load and validate a stem-map config");
  add_common(dict_validate, flags[0]);

  auto* segment = app.add_subcommand("segment", "split programs into basic blocks");
  add_common(segment, flags[1]);

  auto* tf = app.add_subcommand("tf", "build the term-document matrix");
  add_common(tf, flags[2]);

  auto* svd = app.add_subcommand("svd", "decompose a term-document matrix");
  add_common(svd, flags[3]);
  std::string svd_input;
  svd->add_option("--input", svd_input, "matrix CSV (default <out>/termdoc.csv)");

  auto* project = app.add_subcommand("project", "project terms/documents into topics");
  add_common(project, flags[4]);
  std::string project_space = "term";
  project->add_option("--space", project_space, "term|doc");

  auto* similar = app.add_subcommand("similar", "rank nearest documents by cosine");
  add_common(similar, flags[5]);
  std::string similar_space, similar_query;
  std::size_t similar_k = 10;
  similar->add_option("--space", similar_space, "topic-space CSV path");
  similar->add_option("--query", similar_query, "point label")->required();
  similar->add_option("-k,--top", similar_k, "result count");

  auto* cfg_cmd = app.add_subcommand("cfg", "decompose control-flow adjacency");
  add_common(cfg_cmd, flags[6]);

  auto* run = app.add_subcommand("run", "full pipeline over a corpus");
  add_common(run, flags[7]);

  auto* report = app.add_subcommand("report", "summarize a completed run");
  add_common(report, flags[8]);

  try {
    app.parse(argc, argv);
    if (dict_validate->parsed()) return cmd_dict_validate(flags[0]);
    if (segment->parsed()) return cmd_segment(flags[1]);
    if (tf->parsed()) return cmd_tf(flags[2]);
    if (svd->parsed()) return cmd_svd(flags[3], svd_input);
    if (project->parsed()) return cmd_project(flags[4], project_space);
    if (similar->parsed())
      return cmd_similar(flags[5], similar_space, similar_query, similar_k);
    if (cfg_cmd->parsed()) return cmd_cfg(flags[6]);
    if (run->parsed()) return cmd_run(flags[7]);
    if (report->parsed()) return cmd_report(flags[8]);
    std::fprintf(stderr, "no subcommand\n");
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const binlsa::NumericError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const binlsa::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
