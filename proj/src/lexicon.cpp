#include "binlsa/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "binlsa/errors.hpp"

namespace binlsa {
namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

std::size_t TermDictionary::stem(std::string_view mnemonic, OovTally* tally) const {
  auto it = stem_map_.find(std::string(mnemonic));
  if (it != stem_map_.end()) return it->second;
  if (tally) tally->record(mnemonic);
  return oov_index_;
}

std::optional<std::size_t> TermDictionary::group_index(std::string_view group_name) const {
  for (std::size_t i = 0; i < groups_.size(); ++i)
    if (groups_[i] == group_name) return i;
  return std::nullopt;
}

TermDictionary load_dictionary(const nlohmann::json& config, bool canonical) {
  if (!config.is_object() || !config.contains("groups") || !config["groups"].is_array())
    throw SchemaViolation("groups");

  TermDictionary dict;
  bool oov_seen = false;

  for (const auto& group : config["groups"]) {
    if (!group.is_object() || !group.contains("name") || !group["name"].is_string())
      throw SchemaViolation("groups[].name");
    if (!group.contains("members") || !group["members"].is_array())
      throw SchemaViolation("groups[].members");

    const std::string name = group["name"].get<std::string>();
    if (name.empty()) throw SchemaViolation("groups[].name");
    if (dict.group_index(name)) throw SchemaViolation("groups[].name");
    const std::size_t index = dict.groups_.size();
    dict.groups_.push_back(name);

    if (group.contains("oov")) {
      if (!group["oov"].is_boolean()) throw SchemaViolation("groups[].oov");
      if (group["oov"].get<bool>()) {
        if (oov_seen) throw SchemaViolation("groups[].oov");
        oov_seen = true;
        dict.oov_index_ = index;
      }
    }

    for (const auto& member : group["members"]) {
      if (!member.is_string()) throw SchemaViolation("groups[].members[]");
      const std::string term = lowercase(member.get<std::string>());
      if (term.empty() || term.find_first_of(" \t") != std::string::npos)
        throw SchemaViolation("groups[].members[]");
      if (dict.stem_map_.count(term)) throw DuplicateTerm(term);
      dict.stem_map_.emplace(term, index);
      dict.raw_terms_.push_back(term);
    }
  }

  if (!oov_seen) throw SchemaViolation("groups[].oov");
  if (canonical && dict.groups_.size() != kCanonicalGroupCount)
    throw GroupCountMismatch(kCanonicalGroupCount, dict.groups_.size());
  return dict;
}

TermDictionary load_dictionary_file(const std::filesystem::path& path, bool canonical) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open dictionary config: " + path.string());
  nlohmann::json config;
  try {
    in >> config;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return load_dictionary(config, canonical);
}

TermDictionary expand_raw(const TermDictionary& dict) {
  TermDictionary raw;
  raw.groups_ = dict.raw_terms_;
  raw.raw_terms_ = dict.raw_terms_;
  for (std::size_t i = 0; i < raw.groups_.size(); ++i)
    raw.stem_map_.emplace(raw.groups_[i], i);
  std::string sink = dict.oov_group();
  if (raw.stem_map_.count(sink)) sink += "-oov";  // sink name shadowed by a term
  raw.groups_.push_back(sink);
  raw.oov_index_ = raw.groups_.size() - 1;
  return raw;
}

}  // namespace binlsa
