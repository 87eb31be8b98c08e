#ifndef BINLSA_INSTRUCTION_HPP
#define BINLSA_INSTRUCTION_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace binlsa {

/// One decoded assembly line.
struct Instruction {
  std::uint64_t address = 0;  // byte offset in the image
  std::string mnemonic;       // lowercase core mnemonic, no whitespace
  std::string prefix;         // lock/rep/... split off the mnemonic, or empty
  std::string operands;       // raw operand text, never tokenized
  std::string raw_line;       // original source line, for diagnostics

  bool operator==(const Instruction&) const = default;
};

enum class SourceOrigin { DisasmText, JsonBundle };

/// An ordered instruction stream for one program.
struct ProgramSource {
  std::string name;
  std::vector<Instruction> instructions;
  SourceOrigin origin = SourceOrigin::DisasmText;

  // Lenient-parse bookkeeping: skipped + instructions.size() == total_lines.
  std::size_t skipped_lines = 0;
  std::size_t total_lines = 0;
};

}  // namespace binlsa

#endif  // BINLSA_INSTRUCTION_HPP
