#include "binlsa/segmenter.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "binlsa/errors.hpp"

namespace binlsa {

const char* terminator_name(Terminator t) {
  switch (t) {
    case Terminator::JumpUnconditional: return "jump-unconditional";
    case Terminator::JumpConditional: return "jump-conditional";
    case Terminator::Call: return "call";
    case Terminator::Return: return "return";
    case Terminator::Interrupt: return "interrupt";
    case Terminator::FallthroughEnd: return "fallthrough-end";
  }
  return "?";
}

std::optional<Terminator> transfer_kind(const TermDictionary& dict,
                                        const Instruction& ins) {
  if (!dict.knows(ins.mnemonic)) return std::nullopt;  // OOV never transfers
  const std::string& group = dict.groups()[dict.stem(ins.mnemonic)];
  if (group == "jump-unconditional") return Terminator::JumpUnconditional;
  if (group == "jump-conditional") return Terminator::JumpConditional;
  if (group == "loop-control") return Terminator::JumpConditional;
  if (group == "call") return Terminator::Call;
  if (group == "return") return Terminator::Return;
  if (group == "interrupt") return Terminator::Interrupt;
  return std::nullopt;
}

std::optional<std::uint64_t> parse_target_address(std::string_view operands) {
  // first token only
  std::size_t start = operands.find_first_not_of(" \t");
  if (start == std::string_view::npos) return std::nullopt;
  std::size_t end = operands.find_first_of(" \t,", start);
  std::string_view tok = operands.substr(
      start, end == std::string_view::npos ? operands.size() - start : end - start);

  if (tok.size() > 2 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X'))
    tok = tok.substr(2);
  if (tok.empty() || tok.size() > 16) return std::nullopt;

  std::uint64_t value = 0;
  for (char c : tok) {
    int digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
    else return std::nullopt;
    value = value * 16 + static_cast<std::uint64_t>(digit);
  }
  return value;
}

std::vector<BasicBlock> segment(const ProgramSource& src, const TermDictionary& dict,
                                const SegmentOptions& opts) {
  const auto& stream = src.instructions;

  auto terminates = [&](const Instruction& ins) -> std::optional<Terminator> {
    auto kind = transfer_kind(dict, ins);
    if (kind == Terminator::Call && !opts.split_on_call) return std::nullopt;
    return kind;
  };

  // Leader rule: collect resolvable transfer targets that land on an
  // instruction address in this stream.
  std::unordered_set<std::uint64_t> leaders;
  if (opts.mode == SegMode::Leaders) {
    std::unordered_set<std::uint64_t> addresses;
    for (const auto& ins : stream) addresses.insert(ins.address);
    for (const auto& ins : stream) {
      if (!transfer_kind(dict, ins)) continue;
      if (auto target = parse_target_address(ins.operands))
        if (addresses.count(*target)) leaders.insert(*target);
    }
  }

  std::vector<BasicBlock> blocks;
  BasicBlock current;
  auto flush = [&](Terminator t) {
    if (current.instructions.empty()) return;
    current.block_id = blocks.size();
    current.start_address = current.instructions.front().address;
    current.end_address = current.instructions.back().address;
    current.terminator = t;
    blocks.push_back(std::move(current));
    current = BasicBlock{};
  };

  for (const auto& ins : stream) {
    if (opts.mode == SegMode::Leaders && leaders.count(ins.address))
      flush(Terminator::FallthroughEnd);
    current.instructions.push_back(ins);
    if (auto t = terminates(ins)) flush(*t);
  }
  flush(Terminator::FallthroughEnd);
  return blocks;
}

ControlFlowGraph build_cfg(const std::vector<BasicBlock>& blocks,
                           const std::optional<EdgeList>& edges) {
  ControlFlowGraph g;
  g.n = blocks.size();
  g.adjacency = Matrix(g.n, g.n);
  g.node_ids.reserve(g.n);
  for (const auto& b : blocks) g.node_ids.push_back(b.block_id);

  std::unordered_map<std::size_t, std::size_t> row_of;
  for (std::size_t i = 0; i < g.n; ++i) row_of.emplace(g.node_ids[i], i);

  if (edges) {
    for (const auto& [from, to] : *edges) {
      auto f = row_of.find(from);
      if (f == row_of.end()) throw UnknownBlockId(from);
      auto t = row_of.find(to);
      if (t == row_of.end()) throw UnknownBlockId(to);
      g.adjacency(f->second, t->second) = 1.0;
    }
    return g;
  }

  auto block_at = [&](std::uint64_t addr) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (addr >= blocks[i].start_address && addr <= blocks[i].end_address) return i;
    return std::nullopt;
  };

  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const BasicBlock& b = blocks[i];
    const bool has_next = i + 1 < blocks.size();
    switch (b.terminator) {
      case Terminator::JumpConditional:
      case Terminator::Call:
      case Terminator::FallthroughEnd:
        if (has_next) g.adjacency(i, i + 1) = 1.0;
        break;
      case Terminator::JumpUnconditional:
      case Terminator::Return:
      case Terminator::Interrupt:
        break;
    }
    if (b.terminator == Terminator::JumpUnconditional ||
        b.terminator == Terminator::JumpConditional ||
        b.terminator == Terminator::Call) {
      if (auto target = parse_target_address(b.instructions.back().operands))
        if (auto row = block_at(*target)) g.adjacency(i, *row) = 1.0;
    }
  }
  return g;
}

}  // namespace binlsa
