#ifndef BINLSA_SEGMENTER_HPP
#define BINLSA_SEGMENTER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "binlsa/instruction.hpp"
#include "binlsa/lexicon.hpp"
#include "binlsa/matrix.hpp"

namespace binlsa {

enum class Terminator {
  JumpUnconditional,
  JumpConditional,
  Call,
  Return,
  Interrupt,
  FallthroughEnd,
};

const char* terminator_name(Terminator t);

/// Contiguous instruction run ending at a control transfer; the "document"
/// unit of the term-frequency representation.
struct BasicBlock {
  std::size_t block_id = 0;
  std::uint64_t start_address = 0;
  std::uint64_t end_address = 0;  // address of the last instruction
  std::vector<Instruction> instructions;
  Terminator terminator = Terminator::FallthroughEnd;
};

enum class SegMode {
  Paper,    // split only after control transfers
  Leaders,  // additionally split at resolvable jump targets
};

struct SegmentOptions {
  SegMode mode = SegMode::Paper;
  bool split_on_call = false;  // whether call ends a block
};

/// Control-transfer classification is driven by the lexicon's group names
/// (jump-unconditional, jump-conditional, loop-control, call, return,
/// interrupt), so segmentation and stemming share one vocabulary. Returns
/// nullopt for non-transfer instructions.
std::optional<Terminator> transfer_kind(const TermDictionary& dict,
                                        const Instruction& ins);

/// Split an instruction stream into basic blocks. The concatenation of all
/// blocks' instruction lists equals the input stream; a trailing run without
/// a control transfer becomes a block terminated FallthroughEnd.
std::vector<BasicBlock> segment(const ProgramSource& src, const TermDictionary& dict,
                                const SegmentOptions& opts = {});

/// Directed control-flow graph over basic blocks, stored as a dense 0/1
/// adjacency matrix. Row/column order follows node_ids.
struct ControlFlowGraph {
  std::size_t n = 0;
  Matrix adjacency;
  std::vector<std::size_t> node_ids;
};

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

/// Build the adjacency matrix. When an external edge list is supplied it is
/// taken verbatim (UnknownBlockId for dangling endpoints). Otherwise edges
/// are synthesized: fallthrough i -> i+1 after conditional jumps, calls and
/// mid-stream fallthrough blocks, plus jump-target edges whenever the
/// operand parses as an address inside a known block's range.
ControlFlowGraph build_cfg(const std::vector<BasicBlock>& blocks,
                           const std::optional<EdgeList>& edges = std::nullopt);

/// First operand token as a code address, when it looks like one (0x-prefixed
/// or bare hex, the objdump convention). Register/indirect operands yield
/// nullopt; indirect target resolution is out of scope.
std::optional<std::uint64_t> parse_target_address(std::string_view operands);

}  // namespace binlsa

#endif  // BINLSA_SEGMENTER_HPP
