#ifndef BINLSA_PARSE_HPP
#define BINLSA_PARSE_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "binlsa/instruction.hpp"

namespace binlsa {

struct ParseOptions {
  // Lenient mode (default) skips and tallies lines that do not parse as
  // instructions; strict mode raises MalformedLine for instruction-shaped
  // lines that fail the grammar or break address order.
  bool strict = false;
};

/// Parse an objdump-style disassembly listing.
///
/// Two line forms are accepted:
///   1. `ADDR: [HEXBYTE ...] MNEMONIC [OPERANDS]` — objdump -d output,
///      ADDR is hex without 0x, HEXBYTE tokens are exactly two hex digits.
///   2. `MNEMONIC [OPERANDS]` — a bare lowercase mnemonic column; synthetic
///      sequential addresses are assigned.
/// Anything else (section headers, symbol labels, blank lines, data-in-text)
/// is skipped and counted.
///
/// Throws EmptyProgram if no instruction line parses, MalformedLine in
/// strict mode only.
ProgramSource parse_disasm(std::string_view text, const std::string& name,
                           const ParseOptions& opts = {});

/// Parse the JSON bundle form:
///   {"name": str, "instructions": [{"addr": int, "mn": str, "ops": str}]}
/// Optional per-instruction fields "pfx" and "raw" carry the prefix note and
/// original line across a disasm -> bundle -> disasm round trip.
/// Throws SchemaViolation naming the offending field.
ProgramSource parse_bundle(const nlohmann::json& doc);

/// Inverse of parse_bundle; parse_bundle(export_bundle(p)) reproduces the
/// name and the full instruction list field for field.
nlohmann::json export_bundle(const ProgramSource& src);

}  // namespace binlsa

#endif  // BINLSA_PARSE_HPP
