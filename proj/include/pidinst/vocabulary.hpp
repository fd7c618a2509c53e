#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pidinst {

struct vocabulary_term {
  std::string token;
  std::string concept_url;  // optional
  std::string definition;   // optional
};

/// Offline snapshot of one controlled vocabulary (a flat SKOS-style term
/// list). Tokens are unique case-insensitively within a scheme.
struct vocabulary_snapshot {
  std::string scheme_id;  // e.g. "dateType", "relationType", "L22-instrument-types"
  std::string source;     // provenance note
  std::vector<vocabulary_term> terms;

  bool contains(std::string_view token) const;
};

enum class term_match { exact, case_variant, unknown };

struct term_lookup {
  term_match match = term_match::unknown;
  std::string canonical;  // set for exact and case_variant matches
};

/// Flat term lookup: exact on case-sensitive match, case_variant with the
/// canonical spelling when the token differs only by case, unknown otherwise.
term_lookup check_vocabulary(std::string_view term, const vocabulary_snapshot& scheme);

/// Loads one snapshot file (JSON: scheme_id, source, terms[]).
vocabulary_snapshot load_vocabulary(const std::filesystem::path& file);

/// Loads every *.json snapshot in a directory, sorted by filename.
std::vector<vocabulary_snapshot> load_vocabulary_dir(const std::filesystem::path& dir);

/// The controlled lists the toolkit ships built in: dateType
/// {Commissioned, DeCommissioned}, the relationType tokens accepted on
/// input, and the recommended alternateIdentifierType token SerialNumber.
std::vector<vocabulary_snapshot> default_vocabularies();

/// Snapshot with the given scheme_id, if present.
const vocabulary_snapshot* find_scheme(const std::vector<vocabulary_snapshot>& vocabularies,
                                       std::string_view scheme_id);

}  // namespace pidinst
