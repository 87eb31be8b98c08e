#ifndef BINLSA_ERRORS_HPP
#define BINLSA_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace binlsa {

/// Root of the error hierarchy. Subtrees map to process exit codes:
/// InputError -> 2, NumericError -> 3 (usage errors are handled by the CLI
/// parser itself and exit 1).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InputError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// --- parsing ---

class EmptyProgram : public InputError {
 public:
  explicit EmptyProgram(const std::string& name)
      : InputError("no instruction lines parsed from '" + name + "'"), name(name) {}
  std::string name;
};

class MalformedLine : public InputError {
 public:
  MalformedLine(std::size_t line_number, const std::string& line)
      : InputError("malformed line " + std::to_string(line_number) + ": " + line),
        line_number(line_number),
        line(line) {}
  std::size_t line_number;
  std::string line;
};

class SchemaViolation : public InputError {
 public:
  explicit SchemaViolation(const std::string& field)
      : InputError("schema violation at field '" + field + "'"), field(field) {}
  std::string field;
};

// --- dictionary ---

class DuplicateTerm : public InputError {
 public:
  explicit DuplicateTerm(const std::string& term)
      : InputError("opcode '" + term + "' appears in more than one group"), term(term) {}
  std::string term;
};

class GroupCountMismatch : public InputError {
 public:
  GroupCountMismatch(std::size_t expected, std::size_t actual)
      : InputError("canonical dictionary requires " + std::to_string(expected) +
                   " groups, config has " + std::to_string(actual)),
        expected(expected),
        actual(actual) {}
  std::size_t expected;
  std::size_t actual;
};

// --- corpus / graph / spaces ---

class EmptyCorpus : public InputError {
 public:
  explicit EmptyCorpus(const std::string& where)
      : InputError("corpus is empty: " + where) {}
};

class UnknownBlockId : public InputError {
 public:
  explicit UnknownBlockId(std::size_t id)
      : InputError("edge references unknown block id " + std::to_string(id)), id(id) {}
  std::size_t id;
};

class UnknownLabel : public InputError {
 public:
  explicit UnknownLabel(const std::string& label)
      : InputError("no point labeled '" + label + "'"), label(label) {}
  std::string label;
};

class DimOutOfRange : public InputError {
 public:
  explicit DimOutOfRange(const std::string& what) : InputError(what) {}
};

class RankOutOfRange : public InputError {
 public:
  RankOutOfRange(std::size_t k, std::size_t rank)
      : InputError("rank " + std::to_string(k) + " outside [1, " +
                   std::to_string(rank) + "]"),
        k(k),
        rank(rank) {}
  std::size_t k;
  std::size_t rank;
};

class ZeroVector : public InputError {
 public:
  explicit ZeroVector(const std::string& what)
      : InputError("cosine undefined for zero vector: " + what) {}
};

class MissingArtifact : public InputError {
 public:
  explicit MissingArtifact(const std::string& path)
      : InputError("artifact listed in manifest is missing: " + path), path(path) {}
  std::string path;
};

// --- numerics ---

class NonFiniteInput : public NumericError {
 public:
  NonFiniteInput(std::size_t row, std::size_t col)
      : NumericError("non-finite matrix entry at (" + std::to_string(row) + ", " +
                     std::to_string(col) + ")"),
        row(row),
        col(col) {}
  std::size_t row;
  std::size_t col;
};

class NoConvergence : public NumericError {
 public:
  explicit NoConvergence(int sweeps)
      : NumericError("decomposition did not converge after " +
                     std::to_string(sweeps) + " sweeps"),
        sweeps(sweeps) {}
  int sweeps;
};

}  // namespace binlsa

#endif  // BINLSA_ERRORS_HPP
