#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "binlsa/errors.hpp"
#include "binlsa/parse.hpp"
#include "binlsa/segmenter.hpp"

using namespace binlsa;

namespace {

const TermDictionary& dict() {
  static const TermDictionary d =
      load_dictionary_file(std::string(BINLSA_DATA_DIR) + "/stemmap32.json");
  return d;
}

ProgramSource stream_of(const std::vector<std::string>& mnemonics) {
  ProgramSource src;
  src.name = "synth";
  for (std::size_t i = 0; i < mnemonics.size(); ++i) {
    Instruction ins;
    ins.address = i * 4;
    ins.mnemonic = mnemonics[i];
    src.instructions.push_back(std::move(ins));
  }
  src.total_lines = mnemonics.size();
  return src;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_partition(const ProgramSource& src, const std::vector<BasicBlock>& blocks) {
  std::size_t total = 0;
  std::size_t pos = 0;
  for (const auto& b : blocks) {
    REQUIRE_FALSE(b.instructions.empty());
    CHECK(b.start_address == b.instructions.front().address);
    CHECK(b.end_address == b.instructions.back().address);
    for (const auto& ins : b.instructions) {
      REQUIRE(pos < src.instructions.size());
      CHECK(ins == src.instructions[pos]);
      ++pos;
    }
    total += b.instructions.size();
  }
  CHECK(total == src.instructions.size());
  for (std::size_t i = 1; i < blocks.size(); ++i)
    CHECK(blocks[i].start_address > blocks[i - 1].end_address);
}

}  // namespace

TEST_CASE("the ten-instruction reference block segments to one block") {
  const auto src = parse_disasm(
      slurp(std::string(BINLSA_FIXTURE_DIR) + "/fig1.asm"), "fig1");
  const auto blocks = segment(src, dict());
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].instructions.size() == 10);
  CHECK(blocks[0].terminator == Terminator::JumpUnconditional);
  check_partition(src, blocks);
}

TEST_CASE("alternating stream splits after each jump") {
  const auto src = stream_of({"mov", "jmp", "mov", "jmp"});
  const auto blocks = segment(src, dict());
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].instructions.size() == 2);
  CHECK(blocks[1].instructions.size() == 2);
  CHECK(blocks[0].terminator == Terminator::JumpUnconditional);
  check_partition(src, blocks);
}

TEST_CASE("a stream without transfers is one fallthrough block") {
  const auto src = stream_of({"mov", "add"});
  const auto blocks = segment(src, dict());
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].terminator == Terminator::FallthroughEnd);
}

TEST_CASE("terminator kinds follow the lexicon groups") {
  const auto src = stream_of({"mov", "je", "mov", "ret", "mov", "int3", "loop", "mov"});
  const auto blocks = segment(src, dict());
  REQUIRE(blocks.size() == 5);
  CHECK(blocks[0].terminator == Terminator::JumpConditional);
  CHECK(blocks[1].terminator == Terminator::Return);
  CHECK(blocks[2].terminator == Terminator::Interrupt);
  CHECK(blocks[3].terminator == Terminator::JumpConditional);  // loop folds here
  CHECK(blocks[4].terminator == Terminator::FallthroughEnd);
}

TEST_CASE("call splits only when asked") {
  const auto src = stream_of({"mov", "call", "mov", "ret"});
  auto blocks = segment(src, dict());
  CHECK(blocks.size() == 1);

  blocks = segment(src, dict(), {SegMode::Paper, /*split_on_call=*/true});
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].terminator == Terminator::Call);
}

TEST_CASE("paper mode: every control transfer ends its block") {
  std::mt19937 rng(7);
  const std::vector<std::string> pool = {"mov", "add", "xor",  "push", "pop",
                                         "jmp", "je",  "jne",  "ret",  "cmp",
                                         "lea", "nop", "test", "loopne"};
  for (int round = 0; round < 50; ++round) {
    std::vector<std::string> mnemonics;
    const std::size_t len = 1 + rng() % 60;
    for (std::size_t i = 0; i < len; ++i) mnemonics.push_back(pool[rng() % pool.size()]);
    const auto src = stream_of(mnemonics);
    const auto blocks = segment(src, dict());
    check_partition(src, blocks);
    for (const auto& b : blocks)
      for (std::size_t i = 0; i + 1 < b.instructions.size(); ++i)
        CHECK_FALSE(transfer_kind(dict(), b.instructions[i]).has_value());
  }
}

TEST_CASE("leaders mode additionally splits at resolved jump targets") {
  // jmp back into the middle of the first run
  ProgramSource src = stream_of({"mov", "add", "sub", "cmp", "jne"});
  src.instructions[4].operands = "0x8";  // address of "sub"

  const auto paper_blocks = segment(src, dict());
  CHECK(paper_blocks.size() == 1);

  const auto leader_blocks = segment(src, dict(), {SegMode::Leaders, false});
  REQUIRE(leader_blocks.size() == 2);
  CHECK(leader_blocks[0].instructions.size() == 2);
  CHECK(leader_blocks[0].terminator == Terminator::FallthroughEnd);
  CHECK(leader_blocks[1].instructions.front().mnemonic == "sub");
  check_partition(src, leader_blocks);
}

TEST_CASE("single block with no edges is a 1x1 zero matrix") {
  const auto src = stream_of({"mov", "jmp"});
  const auto g = build_cfg(segment(src, dict()));
  CHECK(g.n == 1);
  CHECK(g.adjacency(0, 0) == 0.0);
}

TEST_CASE("external edge list is taken verbatim") {
  const auto src = stream_of({"mov", "jmp", "mov", "jmp", "mov", "jmp"});
  const auto blocks = segment(src, dict());
  REQUIRE(blocks.size() == 3);

  EdgeList cycle = {{0, 1}, {1, 2}, {2, 0}};
  const auto g = build_cfg(blocks, cycle);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(g.adjacency(i, j) == ((j == (i + 1) % 3) ? 1.0 : 0.0));

  CHECK_THROWS_AS(build_cfg(blocks, EdgeList{{0, 7}}), UnknownBlockId);
}

TEST_CASE("synthesized edges: conditional jump with unresolvable target") {
  ProgramSource src = stream_of({"mov", "jne", "mov", "ret"});
  src.instructions[1].operands = "0xffff";  // outside every block
  const auto blocks = segment(src, dict());
  REQUIRE(blocks.size() == 2);
  const auto g = build_cfg(blocks);
  // hand-built expectation: only the fallthrough edge 0 -> 1
  Matrix expected(2, 2);
  expected(0, 1) = 1.0;
  CHECK(g.adjacency == expected);
}

TEST_CASE("synthesized edges: resolved targets and terminator rules") {
  // block0 ends jne -> block0 start (back edge) plus fallthrough
  // block1 ends jmp -> block0 (no fallthrough)
  // block2 ends ret (no successor)
  ProgramSource src =
      stream_of({"mov", "jne", "add", "jmp", "sub", "ret"});
  src.instructions[1].operands = "0x0";
  src.instructions[3].operands = "0x0";
  const auto blocks = segment(src, dict());
  REQUIRE(blocks.size() == 3);
  const auto g = build_cfg(blocks);

  Matrix expected(3, 3);
  expected(0, 0) = 1.0;  // jne back edge
  expected(0, 1) = 1.0;  // jne fallthrough
  expected(1, 0) = 1.0;  // jmp target, no fallthrough
  CHECK(g.adjacency == expected);
}

TEST_CASE("build_cfg with external edges ignores instruction content") {
  const auto a = segment(stream_of({"mov", "jmp", "add", "jmp"}), dict());
  const auto b = segment(stream_of({"xor", "ret", "cmp", "ret"}), dict());
  EdgeList edges = {{0, 1}, {1, 0}};
  CHECK(build_cfg(a, edges).adjacency == build_cfg(b, edges).adjacency);
}
