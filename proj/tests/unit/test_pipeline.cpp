#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

#include "binlsa/errors.hpp"
#include "binlsa/io.hpp"
#include "binlsa/pipeline.hpp"

using namespace binlsa;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = BINLSA_FIXTURE_DIR;
const std::string kDict = std::string(BINLSA_DATA_DIR) + "/stemmap32.json";

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("binlsa_test_" + tag + "_" +
                                        std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

PipelineConfig fixture_config(const fs::path& out) {
  PipelineConfig cfg;
  cfg.dict_path = kDict;
  cfg.corpus_dir = kFixtures + "/corpus";
  cfg.output_dir = out;
  return cfg;
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("full pipeline over the fixture corpus") {
  TempDir tmp("run");
  const auto manifest = run_pipeline(fixture_config(tmp.path));

  CHECK(manifest.ok);
  REQUIRE(manifest.programs.size() == 4);  // alpha, beta, delta, gamma
  CHECK(manifest.programs[0].name == "alpha");
  CHECK(manifest.programs[2].name == "delta");
  for (const auto& p : manifest.programs) {
    CHECK(p.error.empty());
    CHECK(p.instructions > 0);
    CHECK(p.blocks > 0);
  }

  // beta carries one deliberately out-of-vocabulary opcode
  CHECK(manifest.programs[1].name == "beta");
  CHECK(manifest.programs[1].oov_hits == 1);

  for (const auto& rel : manifest.artifacts) {
    CAPTURE(rel);
    CHECK(fs::exists(tmp.path / rel));
    CHECK(manifest.artifact_hashes.at(rel) ==
          fnv1a_hex(read_file(tmp.path / rel)));
  }

  // canonical dictionary: term space carries all 32 groups
  const auto term_space = read_file(tmp.path / "topics" / "term_space.csv");
  CHECK(count_lines(term_space) == 33);  // header + 32 rows

  // delta's external edge list wins over synthesized edges: 3-cycle
  const auto adj = read_file(tmp.path / "programs" / "delta" / "adjacency.csv");
  CHECK(adj ==
        "0,1,2\n"
        "0,1,0\n"
        "0,0,1\n"
        "1,0,0\n");
}

TEST_CASE("single-program corpus keeps the reference shape") {
  TempDir corpus("fig1corpus");
  TempDir out("fig1out");
  fs::copy_file(kFixtures + "/fig1.asm", corpus.path / "fig1.asm");

  auto cfg = fixture_config(out.path);
  cfg.corpus_dir = corpus.path;
  const auto manifest = run_pipeline(cfg);

  REQUIRE(manifest.programs.size() == 1);
  CHECK(manifest.programs[0].instructions == 10);
  CHECK(manifest.programs[0].blocks == 1);

  const auto term_space = read_file(out.path / "topics" / "term_space.csv");
  CHECK(count_lines(term_space) == 33);
}

TEST_CASE("empty corpus fails before writing anything") {
  TempDir corpus("emptycorpus");
  TempDir out("emptyout");
  auto cfg = fixture_config(out.path);
  cfg.corpus_dir = corpus.path;
  CHECK_THROWS_AS(run_pipeline(cfg), EmptyCorpus);
  CHECK(fs::is_empty(out.path));
}

TEST_CASE("unparsable programs become failure markers, survivors proceed") {
  TempDir corpus("mixedcorpus");
  TempDir out("mixedout");
  fs::copy_file(kFixtures + "/fig1.asm", corpus.path / "good.asm");
  std::ofstream(corpus.path / "junk.asm")
      << "Disassembly of section .text:\n\n0000000000001129 <main>:\n";

  auto cfg = fixture_config(out.path);
  cfg.corpus_dir = corpus.path;
  const auto manifest = run_pipeline(cfg);

  CHECK_FALSE(manifest.ok);
  REQUIRE(manifest.programs.size() == 2);
  CHECK(manifest.programs[0].name == "good");
  CHECK(manifest.programs[0].error.empty());
  CHECK(manifest.programs[1].name == "junk");
  CHECK_FALSE(manifest.programs[1].error.empty());
  CHECK(fs::exists(out.path / "termdoc.csv"));
}

TEST_CASE("identical inputs and config give byte-identical artifacts") {
  TempDir out_a("det_a");
  TempDir out_b("det_b");
  const auto m1 = run_pipeline(fixture_config(out_a.path));

  auto cfg = fixture_config(out_b.path);
  const auto m2 = run_pipeline(cfg);

  REQUIRE(m1.artifacts == m2.artifacts);
  for (const auto& rel : m1.artifacts) {
    CAPTURE(rel);
    CHECK(read_file(out_a.path / rel) == read_file(out_b.path / rel));
  }
}

TEST_CASE("report renders the run and checks artifact integrity") {
  TempDir out("report");
  run_pipeline(fixture_config(out.path));

  const auto report = render_report(out.path);
  CHECK(report.find("Topic weights (top 5") != std::string::npos);
  CHECK(report.find("skewness") != std::string::npos);
  CHECK(report.find("top group: data-move") != std::string::npos);
  CHECK(report.find("threshold 10") != std::string::npos);
  CHECK(report.find("alpha:") != std::string::npos);

  fs::remove(out.path / "factors" / "sigma.csv");
  CHECK_THROWS_AS(render_report(out.path), MissingArtifact);
}

TEST_CASE("config file values load and CLI-style overlay wins") {
  PipelineConfig cfg;
  cfg.apply_json(nlohmann::json{{"weighting", "tf-idf"},
                                {"seg_mode", "leaders"},
                                {"low_weight_threshold", 4.5},
                                {"topic_dims", {2, 3}}});
  CHECK(cfg.weighting == Weighting::TfIdf);
  CHECK(cfg.seg_mode == SegMode::Leaders);
  CHECK(cfg.low_weight_threshold == 4.5);
  CHECK(cfg.topic_dims == std::vector<std::size_t>{2, 3});
  CHECK_THROWS_AS(cfg.apply_json(nlohmann::json{{"topic_dims", "oops"}}),
                  SchemaViolation);
}

TEST_CASE("cli binary: run then report end to end") {
  TempDir out("cli");
  const std::string cli = BINLSA_CLI_PATH;

  std::string cmd = cli + " run --dict " + kDict + " --corpus " + kFixtures +
                    "/corpus --out " + out.path.string() + " > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(out.path / "manifest.json"));

  cmd = cli + " report --out " + out.path.string() + " > " +
        (out.path / "report.txt").string();
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(read_file(out.path / "report.txt").find("Topic weights") !=
        std::string::npos);

  // usage error -> exit 1; input error -> exit 2
  CHECK(WEXITSTATUS(std::system((cli + " bogus 2> /dev/null").c_str())) == 1);
  TempDir empty("cliempty");
  cmd = cli + " run --dict " + kDict + " --corpus " + empty.path.string() +
        " --out " + out.path.string() + " 2> /dev/null";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 2);
}
