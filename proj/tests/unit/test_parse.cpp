#include <doctest.h>

#include <fstream>
#include <sstream>

#include "binlsa/errors.hpp"
#include "binlsa/parse.hpp"

using namespace binlsa;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kFig1Path = std::string(BINLSA_FIXTURE_DIR) + "/fig1.asm";
const std::string kFig1BarePath = std::string(BINLSA_FIXTURE_DIR) + "/fig1_bare.asm";

}  // namespace

TEST_CASE("objdump-style listing parses to the full instruction stream") {
  const auto src = parse_disasm(slurp(kFig1Path), "fig1");
  CHECK(src.instructions.size() == 10);
  CHECK(src.instructions.front().mnemonic == "mov");
  CHECK(src.instructions.back().mnemonic == "jmp");
  CHECK(src.instructions.front().address == 0x0);
  CHECK(src.instructions.back().address == 0x24);
  CHECK(src.instructions.back().operands == "0x100000000");
  CHECK(src.origin == SourceOrigin::DisasmText);

  for (std::size_t i = 1; i < src.instructions.size(); ++i)
    CHECK(src.instructions[i].address > src.instructions[i - 1].address);
  CHECK(src.skipped_lines + src.instructions.size() == src.total_lines);
}

TEST_CASE("bare mnemonic lines get synthetic sequential addresses") {
  const auto src = parse_disasm(slurp(kFig1BarePath), "fig1-bare");
  REQUIRE(src.instructions.size() == 10);
  CHECK(src.instructions[0].address == 0);
  CHECK(src.instructions[9].address == 9);
  CHECK(src.instructions[6].mnemonic == "cmovne");
  CHECK(src.instructions[6].operands == "ecx, eax");
}

TEST_CASE("listing with only headers and blanks is an empty program") {
  const std::string text =
      "a.out:     file format elf64-x86-64\n"
      "\n"
      "Disassembly of section .text:\n"
      "\n"
      "0000000000001129 <main>:\n";
  CHECK_THROWS_AS(parse_disasm(text, "empty"), EmptyProgram);
}

TEST_CASE("minimal addressed instruction") {
  const auto src = parse_disasm("0: 90 nop\n", "tiny");
  REQUIRE(src.instructions.size() == 1);
  CHECK(src.instructions[0].mnemonic == "nop");
  CHECK(src.instructions[0].operands.empty());
  CHECK(src.instructions[0].address == 0);
}

TEST_CASE("lenient mode tallies what it skips; strict mode raises") {
  const std::string text =
      "0: 90 nop\n"
      "4: 00 00\n"  // data-in-text
      "8: c3 ret\n";
  const auto src = parse_disasm(text, "p");
  CHECK(src.instructions.size() == 2);
  CHECK(src.skipped_lines == 1);
  CHECK(src.total_lines == 3);

  try {
    parse_disasm(text, "p", ParseOptions{.strict = true});
    FAIL("expected MalformedLine");
  } catch (const MalformedLine& e) {
    CHECK(e.line_number == 2);
  }
}

TEST_CASE("non-increasing addresses are artifacts, not instructions") {
  const std::string text =
      "10: 90 nop\n"
      "10: 90 nop\n"
      "c: 90 nop\n"
      "14: c3 ret\n";
  const auto src = parse_disasm(text, "p");
  CHECK(src.instructions.size() == 2);  // 0x10 and 0x14
  CHECK(src.skipped_lines == 2);
  CHECK_THROWS_AS(parse_disasm(text, "p", ParseOptions{.strict = true}),
                  MalformedLine);
}

TEST_CASE("lock and rep prefixes split off the core mnemonic") {
  const auto src = parse_disasm(
      "0: f0 48 0f c1 07 lock xadd QWORD PTR [rdi],rax\n"
      "5: f3 a4          rep movsb BYTE PTR es:[rdi],BYTE PTR ds:[rsi]\n"
      "7: f3 90          pause\n",
      "prefixed");
  REQUIRE(src.instructions.size() == 3);
  CHECK(src.instructions[0].prefix == "lock");
  CHECK(src.instructions[0].mnemonic == "xadd");
  CHECK(src.instructions[1].prefix == "rep");
  CHECK(src.instructions[1].mnemonic == "movsb");
  CHECK(src.instructions[2].prefix.empty());
  CHECK(src.instructions[2].mnemonic == "pause");
}

TEST_CASE("parsing is deterministic") {
  const std::string text = slurp(kFig1Path);
  const auto a = parse_disasm(text, "fig1");
  const auto b = parse_disasm(text, "fig1");
  CHECK(a.instructions == b.instructions);
}

TEST_CASE("bundle with a single record") {
  const nlohmann::json doc = {
      {"name", "one"},
      {"instructions", {{{"addr", 0}, {"mn", "mov"}, {"ops", "eax, 1"}}}}};
  const auto src = parse_bundle(doc);
  REQUIRE(src.instructions.size() == 1);
  CHECK(src.instructions[0].mnemonic == "mov");
  CHECK(src.instructions[0].operands == "eax, 1");
  CHECK(src.origin == SourceOrigin::JsonBundle);
}

TEST_CASE("bundle schema violations name the offending field") {
  nlohmann::json doc = {
      {"name", "bad"},
      {"instructions", {{{"addr", 0}, {"ops", "eax, 1"}}}}};  // no "mn"
  try {
    parse_bundle(doc);
    FAIL("expected SchemaViolation");
  } catch (const SchemaViolation& e) {
    CHECK(e.field == "mn");
  }

  doc = {{"instructions", nlohmann::json::array()}};
  CHECK_THROWS_AS(parse_bundle(doc), SchemaViolation);

  // addresses must be strictly increasing
  doc = {{"name", "bad"},
         {"instructions",
          {{{"addr", 5}, {"mn", "mov"}, {"ops", ""}},
           {{"addr", 5}, {"mn", "ret"}, {"ops", ""}}}}};
  try {
    parse_bundle(doc);
    FAIL("expected SchemaViolation");
  } catch (const SchemaViolation& e) {
    CHECK(e.field == "addr");
  }
}

TEST_CASE("bundle round trip is the identity on the instruction list") {
  const auto original = parse_disasm(slurp(kFig1Path), "fig1");
  const auto reparsed = parse_bundle(export_bundle(original));
  CHECK(reparsed.name == original.name);
  REQUIRE(reparsed.instructions.size() == original.instructions.size());
  for (std::size_t i = 0; i < original.instructions.size(); ++i) {
    CAPTURE(i);
    CHECK(reparsed.instructions[i].address == original.instructions[i].address);
    CHECK(reparsed.instructions[i].mnemonic == original.instructions[i].mnemonic);
    CHECK(reparsed.instructions[i].prefix == original.instructions[i].prefix);
    CHECK(reparsed.instructions[i].operands == original.instructions[i].operands);
    CHECK(reparsed.instructions[i].raw_line == original.instructions[i].raw_line);
  }
}
