#include "binlsa/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "binlsa/errors.hpp"
#include "binlsa/io.hpp"
#include "binlsa/parse.hpp"
#include "binlsa/svd.hpp"
#include "binlsa/topics.hpp"

namespace binlsa {
namespace {

const char* seg_mode_name(SegMode m) { return m == SegMode::Paper ? "paper" : "leaders"; }
const char* weighting_name(Weighting w) {
  return w == Weighting::RawTf ? "raw-tf" : "tf-idf";
}

SegMode seg_mode_from(const std::string& s) {
  if (s == "paper") return SegMode::Paper;
  if (s == "leaders") return SegMode::Leaders;
  throw InputError("unknown segmentation mode '" + s + "' (paper|leaders)");
}

Weighting weighting_from(const std::string& s) {
  if (s == "raw-tf" || s == "tf") return Weighting::RawTf;
  if (s == "tf-idf" || s == "tfidf") return Weighting::TfIdf;
  throw InputError("unknown weighting '" + s + "' (tf|tfidf)");
}

bool is_listing(const std::filesystem::path& p) {
  const auto ext = p.extension().string();
  return ext == ".asm" || ext == ".s" || ext == ".txt" || ext == ".dis" ||
         ext == ".disasm";
}

bool is_bundle(const std::filesystem::path& p) {
  if (p.extension() != ".json") return false;
  // edge sidecars are not programs
  return !p.stem().string().ends_with(".edges");
}

// Program names feed CSV labels; keep the separator characters out.
std::string sanitize_name(std::string name) {
  for (char& c : name)
    if (c == ',' || c == ':' || c == '"' || c == '\n') c = '_';
  return name;
}

}  // namespace

nlohmann::json PipelineConfig::to_json() const {
  return nlohmann::json{
      {"dict", dict_path.string()},
      {"corpus", corpus_dir.string()},
      {"out", output_dir.string()},
      {"seg_mode", seg_mode_name(seg_mode)},
      {"split_on_call", split_on_call},
      {"weighting", weighting_name(weighting)},
      {"normalize", normalize},
      {"topic_dims", topic_dims},
      {"low_weight_threshold", low_weight_threshold},
      {"strict_parse", strict_parse},
      {"scaled_projection", scaled_projection},
      {"raw_terms", raw_terms},
      {"canonical_dict", canonical_dict},
  };
}

void PipelineConfig::apply_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SchemaViolation("<config root>");
  auto get_bool = [&](const char* key, bool& into) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_boolean()) throw SchemaViolation(key);
    into = doc[key].get<bool>();
  };
  if (doc.contains("dict")) dict_path = doc["dict"].get<std::string>();
  if (doc.contains("corpus")) corpus_dir = doc["corpus"].get<std::string>();
  if (doc.contains("out")) output_dir = doc["out"].get<std::string>();
  if (doc.contains("seg_mode")) seg_mode = seg_mode_from(doc["seg_mode"].get<std::string>());
  get_bool("split_on_call", split_on_call);
  if (doc.contains("weighting"))
    weighting = weighting_from(doc["weighting"].get<std::string>());
  get_bool("normalize", normalize);
  if (doc.contains("topic_dims")) {
    if (!doc["topic_dims"].is_array()) throw SchemaViolation("topic_dims");
    topic_dims = doc["topic_dims"].get<std::vector<std::size_t>>();
  }
  if (doc.contains("low_weight_threshold")) {
    if (!doc["low_weight_threshold"].is_number())
      throw SchemaViolation("low_weight_threshold");
    low_weight_threshold = doc["low_weight_threshold"].get<double>();
  }
  get_bool("strict_parse", strict_parse);
  get_bool("scaled_projection", scaled_projection);
  get_bool("raw_terms", raw_terms);
  get_bool("canonical_dict", canonical_dict);
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json progs = nlohmann::json::array();
  for (const auto& p : programs) {
    nlohmann::json item{{"name", p.name},
                        {"instructions", p.instructions},
                        {"blocks", p.blocks},
                        {"oov_hits", p.oov_hits},
                        {"skipped_lines", p.skipped_lines}};
    if (!p.error.empty()) item["error"] = p.error;
    progs.push_back(std::move(item));
  }
  return nlohmann::json{
      {"version", version},           {"config", config},
      {"programs", std::move(progs)}, {"artifacts", artifacts},
      {"input_hashes", input_hashes}, {"artifact_hashes", artifact_hashes},
      {"ok", ok},
  };
}

RunManifest RunManifest::from_json(const nlohmann::json& doc) {
  RunManifest m;
  if (!doc.is_object()) throw SchemaViolation("<manifest root>");
  for (const char* key : {"version", "config", "programs", "artifacts"})
    if (!doc.contains(key)) throw SchemaViolation(key);
  m.version = doc["version"].get<std::string>();
  m.config = doc["config"];
  for (const auto& item : doc["programs"]) {
    ProgramReport p;
    p.name = item.at("name").get<std::string>();
    p.instructions = item.at("instructions").get<std::size_t>();
    p.blocks = item.at("blocks").get<std::size_t>();
    p.oov_hits = item.at("oov_hits").get<std::size_t>();
    p.skipped_lines = item.at("skipped_lines").get<std::size_t>();
    if (item.contains("error")) p.error = item["error"].get<std::string>();
    m.programs.push_back(std::move(p));
  }
  m.artifacts = doc["artifacts"].get<std::vector<std::string>>();
  if (doc.contains("input_hashes"))
    m.input_hashes = doc["input_hashes"].get<std::map<std::string, std::string>>();
  if (doc.contains("artifact_hashes"))
    m.artifact_hashes =
        doc["artifact_hashes"].get<std::map<std::string, std::string>>();
  if (doc.contains("ok")) m.ok = doc["ok"].get<bool>();
  return m;
}

std::vector<std::filesystem::path> discover_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw InputError("corpus directory does not exist: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto& p = entry.path();
    if (is_listing(p) || is_bundle(p)) files.push_back(p);
  }
  std::sort(files.begin(), files.end());
  return files;
}

RunManifest run_pipeline(const PipelineConfig& cfg) {
  const auto files = discover_corpus(cfg.corpus_dir);
  if (files.empty()) throw EmptyCorpus(cfg.corpus_dir.string());

  TermDictionary dict = load_dictionary_file(cfg.dict_path, cfg.canonical_dict);
  if (cfg.raw_terms) dict = expand_raw(dict);

  RunManifest manifest;
  manifest.version = kToolVersion;
  manifest.config = cfg.to_json();

  const auto& out_dir = cfg.output_dir;
  auto emit = [&](const std::string& rel, const std::string& content) {
    write_file(out_dir / rel, content);
    manifest.artifacts.push_back(rel);
    manifest.artifact_hashes[rel] = fnv1a_hex(content);
  };

  struct Loaded {
    SegmentedProgram seg;
    ControlFlowGraph cfg_graph;
  };
  std::vector<Loaded> loaded;

  for (const auto& file : files) {
    const std::string raw = read_file(file);
    manifest.input_hashes[file.filename().string()] = fnv1a_hex(raw);

    ProgramReport report;
    report.name = sanitize_name(file.stem().string());
    try {
      ProgramSource src;
      if (file.extension() == ".json") {
        nlohmann::json doc = nlohmann::json::parse(raw);
        src = parse_bundle(doc);
        src.name = report.name;  // corpus identity comes from the filename
      } else {
        src = parse_disasm(raw, report.name, ParseOptions{cfg.strict_parse});
      }

      OovTally tally;
      for (const auto& ins : src.instructions) dict.stem(ins.mnemonic, &tally);

      SegmentOptions seg_opts{cfg.seg_mode, cfg.split_on_call};
      auto blocks = segment(src, dict, seg_opts);

      std::optional<EdgeList> edges;
      const auto edge_file = file.parent_path() / (file.stem().string() + ".edges.json");
      if (std::filesystem::exists(edge_file)) {
        edges = edges_from_json(nlohmann::json::parse(read_file(edge_file)));
        manifest.input_hashes[edge_file.filename().string()] =
            fnv1a_hex(read_file(edge_file));
      }
      ControlFlowGraph graph = build_cfg(blocks, edges);

      report.instructions = src.instructions.size();
      report.blocks = blocks.size();
      report.oov_hits = tally.hits;
      report.skipped_lines = src.skipped_lines;
      loaded.push_back({{report.name, std::move(blocks)}, std::move(graph)});
    } catch (const Error& e) {
      report.error = std::string(e.what()) + " [" + file.filename().string() + "]";
      manifest.ok = false;
    }
    manifest.programs.push_back(std::move(report));
  }

  if (loaded.empty())
    throw EmptyCorpus("no program in " + cfg.corpus_dir.string() + " parsed");

  // corpus matrix and statistics
  std::vector<SegmentedProgram> corpus;
  corpus.reserve(loaded.size());
  for (auto& l : loaded) corpus.push_back(l.seg);

  TermDocMatrix matrix = build_matrix(corpus, dict, cfg.weighting, cfg.normalize);
  emit("termdoc.csv", termdoc_to_csv(matrix));

  TermDocMatrix raw_matrix =
      cfg.weighting == Weighting::RawTf && !cfg.normalize
          ? matrix
          : build_matrix(corpus, dict, Weighting::RawTf, false);
  TermStats stats = term_stats(raw_matrix);
  nlohmann::json stats_json{
      {"group_totals", stats.group_totals},
      {"skewness", stats.skewness},
      {"top_group", stats.top_group},
      {"top_index", stats.top_index},
      {"groups", dict.groups()},
  };
  emit("termstats.json", stats_json.dump(2) + "\n");

  // decomposition
  const SvdOptions svd_opts;
  SvdFactors factors = svd(matrix.values, svd_opts);
  emit("factors/U.csv", factor_to_csv(factors.u, matrix.term_labels));
  emit("factors/sigma.csv", sigma_to_csv(factors.sigma));
  emit("factors/V.csv", factor_to_csv(factors.v, matrix.doc_labels));
  emit("factors/factors.json",
       factor_manifest(factors, matrix.rows(), matrix.cols(), svd_opts).dump(2) + "\n");

  TopicWeights weights = topic_weights(factors);
  nlohmann::json weights_json{{"weights", weights.weights},
                              {"cumulative_variance", weights.cumulative_variance}};
  emit("topicweights.json", weights_json.dump(2) + "\n");

  // topic spaces over the highest-weighted dims that exist at this rank
  std::vector<std::size_t> dims;
  for (std::size_t d : cfg.topic_dims)
    if (d < factors.rank()) dims.push_back(d);
  if (dims.empty()) dims.push_back(0);

  emit("topics/term_space.csv",
       topic_space_to_csv(
           project_terms(factors, dims, matrix.term_labels, cfg.scaled_projection)));
  emit("topics/doc_space.csv",
       topic_space_to_csv(project_documents(factors, dims, matrix.doc_labels,
                                            cfg.scaled_projection)));

  // per-program structure
  for (const auto& l : loaded) {
    const std::string base = "programs/" + l.seg.name + "/";
    emit(base + "blocks.csv", blocks_to_csv(l.seg.blocks));
    emit(base + "adjacency.csv", adjacency_to_csv(l.cfg_graph));
    emit(base + "cfg_report.json",
         cfg_report_to_json(cfg_decompose(l.cfg_graph, cfg.low_weight_threshold))
                 .dump(2) +
             "\n");
  }

  write_file(out_dir / "manifest.json", manifest.to_json().dump(2) + "\n");
  return manifest;
}

std::string render_report(const std::filesystem::path& output_dir) {
  const auto manifest_path = output_dir / "manifest.json";
  if (!std::filesystem::exists(manifest_path))
    throw MissingArtifact(manifest_path.string());
  RunManifest manifest =
      RunManifest::from_json(nlohmann::json::parse(read_file(manifest_path)));

  for (const auto& rel : manifest.artifacts)
    if (!std::filesystem::exists(output_dir / rel))
      throw MissingArtifact((output_dir / rel).string());

  std::size_t total_instructions = 0, total_blocks = 0, failed = 0;
  for (const auto& p : manifest.programs) {
    total_instructions += p.instructions;
    total_blocks += p.blocks;
    if (!p.error.empty()) ++failed;
  }

  char buf[256];
  std::string out;
  out += std::string(manifest.version) + " run report\n";
  out += "==========================\n";
  std::snprintf(buf, sizeof(buf), "corpus: %zu programs, %zu instructions, %zu blocks\n",
                manifest.programs.size(), total_instructions, total_blocks);
  out += buf;
  if (failed) {
    std::snprintf(buf, sizeof(buf), "failed programs: %zu\n", failed);
    out += buf;
    for (const auto& p : manifest.programs)
      if (!p.error.empty()) out += "  " + p.name + ": " + p.error + "\n";
  }

  const auto sigma = sigma_from_csv(read_file(output_dir / "factors" / "sigma.csv"));
  const std::size_t top = std::min<std::size_t>(5, sigma.size());
  std::snprintf(buf, sizeof(buf), "\nTopic weights (top %zu of %zu):\n", top,
                sigma.size());
  out += buf;
  out += "  topic   weight\n";
  for (std::size_t i = 0; i < top; ++i) {
    std::snprintf(buf, sizeof(buf), "  %5zu   %.4f\n", i, sigma[i]);
    out += buf;
  }

  const nlohmann::json stats =
      nlohmann::json::parse(read_file(output_dir / "termstats.json"));
  out += "\nTerm distribution:\n";
  const auto totals = stats.at("group_totals").get<std::vector<double>>();
  double corpus_total = 0.0;
  for (double t : totals) corpus_total += t;
  std::snprintf(buf, sizeof(buf), "  top group: %s (%.1f%% of %.0f instructions)\n",
                stats.at("top_group").get<std::string>().c_str(),
                corpus_total == 0.0
                    ? 0.0
                    : 100.0 * totals[stats.at("top_index").get<std::size_t>()] /
                          corpus_total,
                corpus_total);
  out += buf;
  std::snprintf(buf, sizeof(buf), "  skewness:  %.4f\n",
                stats.at("skewness").get<double>());
  out += buf;

  out += "\nCFG decomposition:\n";
  for (const auto& p : manifest.programs) {
    if (!p.error.empty()) continue;
    const auto report_path = output_dir / "programs" / p.name / "cfg_report.json";
    const nlohmann::json report = nlohmann::json::parse(read_file(report_path));
    std::snprintf(buf, sizeof(buf),
                  "  %s: %zu nodes, %zu low-weight topics below threshold %g "
                  "(fraction %.3f)\n",
                  p.name.c_str(), report.at("n_nodes").get<std::size_t>(),
                  report.at("low_weight_count").get<std::size_t>(),
                  report.at("threshold").get<double>(),
                  report.at("low_weight_fraction").get<double>());
    out += buf;
  }
  return out;
}

}  // namespace binlsa
