#include "binlsa/parse.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "binlsa/errors.hpp"

namespace binlsa {
namespace {

bool is_hex_digit(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

std::string_view ltrim(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

std::string_view rtrim(std::string_view s) {
  std::size_t n = s.size();
  while (n > 0 && (s[n - 1] == ' ' || s[n - 1] == '\t' || s[n - 1] == '\r')) --n;
  return s.substr(0, n);
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view next_token(std::string_view& rest) {
  rest = ltrim(rest);
  std::size_t n = 0;
  while (n < rest.size() && rest[n] != ' ' && rest[n] != '\t') ++n;
  std::string_view tok = rest.substr(0, n);
  rest = rest.substr(n);
  return tok;
}

bool is_byte_token(std::string_view tok) {
  return tok.size() == 2 && is_hex_digit(tok[0]) && is_hex_digit(tok[1]);
}

// Core mnemonic shape: a letter, then letters/digits/dots. Bare-form lines
// additionally require the token to be lowercase already, which keeps prose
// like "Disassembly of section .text:" out of the instruction stream.
bool is_mnemonic_token(std::string_view tok, bool require_lower) {
  if (tok.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(tok[0]))) return false;
  if (require_lower && std::isupper(static_cast<unsigned char>(tok[0]))) return false;
  for (char c : tok) {
    const auto uc = static_cast<unsigned char>(c);
    if (!std::isalnum(uc) && c != '.' && c != '_') return false;
    if (require_lower && std::isupper(uc)) return false;
  }
  return true;
}

bool is_prefix_mnemonic(std::string_view m) {
  return m == "lock" || m == "rep" || m == "repe" || m == "repz" ||
         m == "repne" || m == "repnz";
}

std::optional<std::uint64_t> parse_hex(std::string_view s) {
  if (s.empty() || s.size() > 16) return std::nullopt;
  std::uint64_t v = 0;
  for (char c : s) {
    if (!is_hex_digit(c)) return std::nullopt;
    v = v * 16 + static_cast<std::uint64_t>(
                     c <= '9' ? c - '0'
                              : (c >= 'a' ? c - 'a' : c - 'A') + 10);
  }
  return v;
}

enum class LineKind { NotInstruction, Malformed, Parsed };

struct LineResult {
  LineKind kind = LineKind::NotInstruction;
  Instruction ins;
  bool has_address = false;
};

// A line that opens with "ADDR:" is instruction-shaped; failing the rest of
// the grammar there is Malformed (strict mode raises it). Everything that
// never looked like an instruction is NotInstruction and is always skipped.
LineResult parse_line(std::string_view line) {
  LineResult out;
  std::string_view rest = ltrim(rtrim(line));
  if (rest.empty()) return out;

  out.ins.raw_line = std::string(rtrim(line));

  // Form 1: "ADDR:" prefix.
  std::size_t hex_len = 0;
  while (hex_len < rest.size() && is_hex_digit(rest[hex_len])) ++hex_len;
  if (hex_len > 0 && hex_len < rest.size() && rest[hex_len] == ':') {
    auto addr = parse_hex(rest.substr(0, hex_len));
    if (!addr) return out;
    rest = rest.substr(hex_len + 1);

    std::string_view tok = next_token(rest);
    while (is_byte_token(tok)) tok = next_token(rest);
    if (!is_mnemonic_token(tok, /*require_lower=*/false)) {
      out.kind = LineKind::Malformed;  // data-in-text, relocation rows, ...
      return out;
    }

    out.has_address = true;
    out.ins.address = *addr;
    out.ins.mnemonic = lowercase(tok);
    out.ins.operands = std::string(rtrim(ltrim(rest)));
  } else {
    // Form 2: bare lowercase mnemonic column.
    std::string_view tok = next_token(rest);
    if (!is_mnemonic_token(tok, /*require_lower=*/true)) return out;
    out.ins.mnemonic = std::string(tok);
    out.ins.operands = std::string(rtrim(ltrim(rest)));
  }

  // Split a lock/rep prefix off the core mnemonic.
  if (is_prefix_mnemonic(out.ins.mnemonic) && !out.ins.operands.empty()) {
    std::string_view ops = out.ins.operands;
    std::string_view tok = next_token(ops);
    if (is_mnemonic_token(tok, /*require_lower=*/false)) {
      out.ins.prefix = out.ins.mnemonic;
      out.ins.mnemonic = lowercase(tok);
      out.ins.operands = std::string(rtrim(ltrim(ops)));
    }
  }
  out.kind = LineKind::Parsed;
  return out;
}

}  // namespace

ProgramSource parse_disasm(std::string_view text, const std::string& name,
                           const ParseOptions& opts) {
  ProgramSource src;
  src.name = name;
  src.origin = SourceOrigin::DisasmText;

  bool have_prev = false;
  std::uint64_t prev_addr = 0;
  std::size_t line_number = 0;

  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const bool last = nl == std::string_view::npos;
    std::string_view line = text.substr(pos, last ? text.size() - pos : nl - pos);
    pos = last ? text.size() : nl + 1;
    ++line_number;
    ++src.total_lines;

    LineResult parsed = parse_line(line);
    if (parsed.kind == LineKind::Malformed && opts.strict)
      throw MalformedLine(line_number, std::string(rtrim(line)));
    if (parsed.kind != LineKind::Parsed) {
      ++src.skipped_lines;
      continue;
    }

    Instruction ins = std::move(parsed.ins);
    if (!parsed.has_address) ins.address = have_prev ? prev_addr + 1 : 0;

    if (have_prev && ins.address <= prev_addr) {
      // Repeated or decreasing address: relocation rows and similar
      // artifacts in real listings. Not an instruction for our purposes.
      if (opts.strict) throw MalformedLine(line_number, std::string(rtrim(line)));
      ++src.skipped_lines;
      continue;
    }

    prev_addr = ins.address;
    have_prev = true;
    src.instructions.push_back(std::move(ins));
  }

  if (src.instructions.empty()) throw EmptyProgram(name);
  return src;
}

ProgramSource parse_bundle(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SchemaViolation("<root>");
  if (!doc.contains("name") || !doc["name"].is_string()) throw SchemaViolation("name");
  if (!doc.contains("instructions") || !doc["instructions"].is_array())
    throw SchemaViolation("instructions");

  ProgramSource src;
  src.name = doc["name"].get<std::string>();
  src.origin = SourceOrigin::JsonBundle;

  bool have_prev = false;
  std::uint64_t prev_addr = 0;
  for (const auto& item : doc["instructions"]) {
    if (!item.is_object()) throw SchemaViolation("instructions[]");
    if (!item.contains("addr") || !item["addr"].is_number_unsigned())
      throw SchemaViolation("addr");
    if (!item.contains("mn") || !item["mn"].is_string()) throw SchemaViolation("mn");
    if (!item.contains("ops") || !item["ops"].is_string()) throw SchemaViolation("ops");

    Instruction ins;
    ins.address = item["addr"].get<std::uint64_t>();
    ins.mnemonic = lowercase(item["mn"].get<std::string>());
    ins.operands = item["ops"].get<std::string>();
    if (item.contains("pfx")) {
      if (!item["pfx"].is_string()) throw SchemaViolation("pfx");
      ins.prefix = item["pfx"].get<std::string>();
    }
    if (item.contains("raw")) {
      if (!item["raw"].is_string()) throw SchemaViolation("raw");
      ins.raw_line = item["raw"].get<std::string>();
    }

    if (ins.mnemonic.empty() ||
        ins.mnemonic.find_first_of(" \t") != std::string::npos)
      throw SchemaViolation("mn");
    if (have_prev && ins.address <= prev_addr) throw SchemaViolation("addr");
    prev_addr = ins.address;
    have_prev = true;
    src.instructions.push_back(std::move(ins));
  }

  if (src.instructions.empty()) throw EmptyProgram(src.name);
  src.total_lines = src.instructions.size();
  return src;
}

nlohmann::json export_bundle(const ProgramSource& src) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& ins : src.instructions) {
    nlohmann::json item = {
        {"addr", ins.address}, {"mn", ins.mnemonic}, {"ops", ins.operands}};
    if (!ins.prefix.empty()) item["pfx"] = ins.prefix;
    if (!ins.raw_line.empty()) item["raw"] = ins.raw_line;
    items.push_back(std::move(item));
  }
  return nlohmann::json{{"name", src.name}, {"instructions", std::move(items)}};
}

}  // namespace binlsa
