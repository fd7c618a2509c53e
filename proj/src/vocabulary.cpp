#include "pidinst/vocabulary.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "pidinst/errors.hpp"
#include "pidinst/json.hpp"
#include "pidinst/strings.hpp"

namespace pidinst {

bool vocabulary_snapshot::contains(std::string_view token) const {
  return std::any_of(terms.begin(), terms.end(),
                     [&](const vocabulary_term& t) { return t.token == token; });
}

term_lookup check_vocabulary(std::string_view term, const vocabulary_snapshot& scheme) {
  for (const auto& t : scheme.terms) {
    if (t.token == term) {
      return {term_match::exact, t.token};
    }
  }
  for (const auto& t : scheme.terms) {
    if (strings::iequals(t.token, term)) {
      return {term_match::case_variant, t.token};
    }
  }
  return {term_match::unknown, {}};
}

vocabulary_snapshot load_vocabulary(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw error("cannot open vocabulary file: " + file.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  json root;
  try {
    root = json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw error("invalid vocabulary file " + file.string() + ": " + e.what());
  }
  if (!root.is_object() || !root.contains("scheme_id") || !root.contains("terms")) {
    throw error("invalid vocabulary file " + file.string() +
                ": expected object with scheme_id and terms");
  }
  vocabulary_snapshot snap;
  snap.scheme_id = root["scheme_id"].get<std::string>();
  snap.source = root.value("source", std::string());
  for (const auto& item : root["terms"]) {
    vocabulary_term term;
    if (item.is_string()) {
      term.token = item.get<std::string>();
    } else if (item.is_object()) {
      term.token = item.value("token", std::string());
      term.concept_url = item.value("concept_url", std::string());
      term.definition = item.value("definition", std::string());
    } else {
      throw error("invalid vocabulary term in " + file.string());
    }
    if (term.token.empty()) {
      throw error("empty vocabulary token in " + file.string());
    }
    for (const auto& existing : snap.terms) {
      if (strings::iequals(existing.token, term.token)) {
        throw error("duplicate vocabulary token (case-insensitive) in " + file.string() + ": " +
                    term.token);
      }
    }
    snap.terms.push_back(std::move(term));
  }
  return snap;
}

std::vector<vocabulary_snapshot> load_vocabulary_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<vocabulary_snapshot> out;
  out.reserve(files.size());
  for (const auto& f : files) {
    out.push_back(load_vocabulary(f));
  }
  return out;
}

std::vector<vocabulary_snapshot> default_vocabularies() {
  std::vector<vocabulary_snapshot> out;

  vocabulary_snapshot date_types;
  date_types.scheme_id = "dateType";
  date_types.source = "built-in lifecycle pair";
  date_types.terms = {{"Commissioned", {}, "date the instrument entered service"},
                      {"DeCommissioned", {}, "date the instrument left service"}};
  out.push_back(std::move(date_types));

  vocabulary_snapshot relation_types;
  relation_types.scheme_id = "relationType";
  relation_types.source = "built-in relation tokens accepted on input";
  relation_types.terms = {
      {"IsDescribedBy", {}, "target describes the instrument (instrument paper, brochure)"},
      {"HasMetadata", {}, "target holds technical metadata for the instrument"},
      {"HasComponent", {}, "target is a persistently identified component"},
      {"IsComponentOf", {}, "instrument is a component of the target"},
      {"IsNewVersionOf", {}, "instrument supersedes the target"},
      {"IsPreviousVersionOf", {}, "instrument is superseded by the target"},
      {"WasUsedIn", {}, "instrument was used in the target activity"},
  };
  out.push_back(std::move(relation_types));

  vocabulary_snapshot alt_types;
  alt_types.scheme_id = "alternateIdentifierType";
  alt_types.source = "built-in recommended tokens (free text elsewhere)";
  alt_types.terms = {{"SerialNumber", {}, "manufacturer-assigned serial number"}};
  out.push_back(std::move(alt_types));

  return out;
}

const vocabulary_snapshot* find_scheme(const std::vector<vocabulary_snapshot>& vocabularies,
                                       std::string_view scheme_id) {
  for (const auto& v : vocabularies) {
    if (v.scheme_id == scheme_id) {
      return &v;
    }
  }
  return nullptr;
}

}  // namespace pidinst
