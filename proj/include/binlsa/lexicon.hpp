#ifndef BINLSA_LEXICON_HPP
#define BINLSA_LEXICON_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace binlsa {

/// Number of stem groups in the canonical configuration.
inline constexpr std::size_t kCanonicalGroupCount = 32;

/// Per-run accumulator for out-of-vocabulary opcode hits.
struct OovTally {
  std::size_t hits = 0;
  std::unordered_map<std::string, std::size_t> by_term;

  void record(std::string_view term) {
    ++hits;
    ++by_term[std::string(term)];
  }
};

/// Raw opcode vocabulary plus the stem map folding it onto semantic groups.
/// Immutable after load; group order defines vector dimension indices.
class TermDictionary {
 public:
  std::size_t size() const { return groups_.size(); }
  const std::vector<std::string>& groups() const { return groups_; }
  const std::vector<std::string>& raw_terms() const { return raw_terms_; }
  std::size_t oov_index() const { return oov_index_; }
  const std::string& oov_group() const { return groups_[oov_index_]; }

  /// Total function: every mnemonic stems to a valid group index; unknown
  /// mnemonics land in the OOV sink (and are recorded in `tally` if given).
  std::size_t stem(std::string_view mnemonic, OovTally* tally = nullptr) const;

  bool knows(std::string_view mnemonic) const {
    return stem_map_.find(std::string(mnemonic)) != stem_map_.end();
  }

  std::optional<std::size_t> group_index(std::string_view group_name) const;

  friend TermDictionary load_dictionary(const nlohmann::json&, bool);
  friend TermDictionary expand_raw(const TermDictionary&);

 private:
  std::vector<std::string> groups_;
  std::vector<std::string> raw_terms_;
  std::unordered_map<std::string, std::size_t> stem_map_;
  std::size_t oov_index_ = 0;
};

/// Load and validate a stem-map config:
///   {"groups": [{"name": str, "members": [str], "oov": bool?}, ...]}
/// Exactly one group must set "oov": true. In canonical mode the group count
/// must be exactly kCanonicalGroupCount.
/// Throws DuplicateTerm, GroupCountMismatch, SchemaViolation.
TermDictionary load_dictionary(const nlohmann::json& config, bool canonical = true);
TermDictionary load_dictionary_file(const std::filesystem::path& path,
                                    bool canonical = true);

/// Raw-vocabulary mode: every raw term becomes its own group (dimension),
/// plus one OOV sink named after the source dictionary's sink group. Used to
/// demonstrate the dimensionality reduction the stem map buys.
TermDictionary expand_raw(const TermDictionary& dict);

}  // namespace binlsa

#endif  // BINLSA_LEXICON_HPP
