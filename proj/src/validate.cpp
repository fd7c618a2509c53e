#include "pidinst/validate.hpp"

#include <algorithm>

#include "pidinst/strings.hpp"

namespace pidinst {

std::string to_string(violation_code code) {
  switch (code) {
    case violation_code::missing_mandatory:
      return "MissingMandatory";
    case violation_code::empty_value:
      return "EmptyValue";
    case violation_code::bad_identifier_syntax:
      return "BadIdentifierSyntax";
    case violation_code::unknown_vocabulary_term:
      return "UnknownVocabularyTerm";
    case violation_code::duplicate_alternate_identifier:
      return "DuplicateAlternateIdentifier";
    case violation_code::bad_date:
      return "BadDate";
    case violation_code::bad_url:
      return "BadUrl";
  }
  return "Unknown";
}

std::string to_string(violation_severity severity) {
  return severity == violation_severity::error ? "Error" : "Warning";
}

bool validation_report::valid() const { return error_count() == 0; }

size_t validation_report::error_count() const {
  return static_cast<size_t>(std::count_if(violations.begin(), violations.end(), [](const violation& v) {
    return v.severity == violation_severity::error;
  }));
}

size_t validation_report::warning_count() const { return violations.size() - error_count(); }

json validation_report::to_json() const {
  json j = json::object();
  j["valid"] = valid();
  json arr = json::array();
  for (const auto& v : violations) {
    json item = json::object();
    item["code"] = to_string(v.code);
    item["path"] = v.path;
    item["message"] = v.message;
    item["severity"] = to_string(v.severity);
    arr.push_back(std::move(item));
  }
  j["violations"] = std::move(arr);
  return j;
}

namespace {

class checker {
 public:
  checker(const std::vector<vocabulary_snapshot>& vocabularies, const validate_options& options)
      : vocabularies_(vocabularies), options_(options) {}

  void add(violation_code code, std::string path, std::string message,
           violation_severity severity) {
    report_.violations.push_back({code, std::move(path), std::move(message), severity});
  }

  void error(violation_code code, std::string path, std::string message) {
    add(code, std::move(path), std::move(message), violation_severity::error);
  }

  void warning(violation_code code, std::string path, std::string message) {
    add(code, std::move(path), std::move(message), violation_severity::warning);
  }

  const vocabulary_snapshot* scheme(std::string_view id) const {
    return find_scheme(vocabularies_, id);
  }

  /// Vocabulary lookup shared by every term-bearing field. closed
  /// controls the severity of truly unknown tokens; case variants are
  /// always warnings carrying the canonical spelling.
  void check_term(const std::string& token, std::string_view scheme_id, const std::string& path,
                  bool closed, bool warn_unknown) {
    const auto* snap = scheme(scheme_id);
    if (snap == nullptr || snap->terms.empty()) {
      return;
    }
    auto lookup = check_vocabulary(token, *snap);
    switch (lookup.match) {
      case term_match::exact:
        return;
      case term_match::case_variant:
        warning(violation_code::unknown_vocabulary_term, path,
                "\"" + token + "\" is a case variant of \"" + lookup.canonical +
                    "\" in scheme " + snap->scheme_id);
        return;
      case term_match::unknown:
        if (closed) {
          error(violation_code::unknown_vocabulary_term, path,
                "\"" + token + "\" is not in the controlled list for scheme " + snap->scheme_id);
        } else if (warn_unknown) {
          warning(violation_code::unknown_vocabulary_term, path,
                  "\"" + token + "\" is not a known term of scheme " + snap->scheme_id);
        }
        return;
    }
  }

  void run(const instrument_record& r);

  validation_report take() {
    std::stable_sort(report_.violations.begin(), report_.violations.end(),
                     [](const violation& a, const violation& b) {
                       if (a.path != b.path) {
                         return a.path < b.path;
                       }
                       return static_cast<int>(a.code) < static_cast<int>(b.code);
                     });
    return std::move(report_);
  }

 private:
  void check_identifier(const instrument_record& r);
  void check_owners(const instrument_record& r);
  void check_manufacturers(const instrument_record& r);
  void check_terms(const std::vector<typed_term>& terms, const std::string& field,
                   const std::string& scheme_id);
  void check_dates(const instrument_record& r);
  void check_alternate_identifiers(const instrument_record& r);
  void check_related_identifiers(const instrument_record& r);

  /// Shape warning for identifier values whose declared type is one of
  /// the well-known schemes.
  void check_declared_identifier(const std::string& value, const std::string& declared_type,
                                 const std::string& path);

  const std::vector<vocabulary_snapshot>& vocabularies_;
  const validate_options& options_;
  validation_report report_;
};

void checker::check_identifier(const instrument_record& r) {
  if (!r.identifier || r.identifier->empty()) {
    if (!options_.allow_missing_identifier) {
      error(violation_code::missing_mandatory, "identifier", "record has no persistent identifier");
    }
  } else if (!r.identifier->well_formed()) {
    error(violation_code::bad_identifier_syntax, "identifier",
          "\"" + r.identifier->value() + "\" is not a well-formed identifier for its scheme");
  }
  if (strings::trim(r.identifier_type).empty() && !options_.allow_missing_identifier) {
    error(violation_code::missing_mandatory, "identifier_type", "identifierType is required");
  }
}

void checker::check_owners(const instrument_record& r) {
  if (r.owners.empty()) {
    error(violation_code::missing_mandatory, "owners", "at least one owner is required");
    return;
  }
  for (size_t i = 0; i < r.owners.size(); ++i) {
    const auto& o = r.owners[i];
    std::string base = "owners[" + std::to_string(i) + "]";
    if (strings::trim(o.owner_name).empty()) {
      error(violation_code::missing_mandatory, base + ".ownerName", "ownerName is required");
    }
    if (!o.owner_identifier.empty() && o.owner_identifier_type.empty()) {
      error(violation_code::empty_value, base + ".ownerIdentifierType",
            "ownerIdentifierType is required when ownerIdentifier is set");
    }
    if (o.owner_identifier.empty() && !o.owner_identifier_type.empty()) {
      error(violation_code::empty_value, base + ".ownerIdentifier",
            "ownerIdentifier is required when ownerIdentifierType is set");
    }
    check_declared_identifier(o.owner_identifier, o.owner_identifier_type,
                              base + ".ownerIdentifier");
  }
}

void checker::check_manufacturers(const instrument_record& r) {
  if (r.manufacturers.empty()) {
    error(violation_code::missing_mandatory, "manufacturers",
          "at least one manufacturer is required");
    return;
  }
  for (size_t i = 0; i < r.manufacturers.size(); ++i) {
    const auto& m = r.manufacturers[i];
    std::string base = "manufacturers[" + std::to_string(i) + "]";
    if (strings::trim(m.manufacturer_name).empty()) {
      error(violation_code::missing_mandatory, base + ".manufacturerName",
            "manufacturerName is required");
    }
    if (!m.manufacturer_identifier.empty() && m.manufacturer_identifier_type.empty()) {
      error(violation_code::empty_value, base + ".manufacturerIdentifierType",
            "manufacturerIdentifierType is required when manufacturerIdentifier is set");
    }
    if (m.manufacturer_identifier.empty() && !m.manufacturer_identifier_type.empty()) {
      error(violation_code::empty_value, base + ".manufacturerIdentifier",
            "manufacturerIdentifier is required when manufacturerIdentifierType is set");
    }
    check_declared_identifier(m.manufacturer_identifier, m.manufacturer_identifier_type,
                              base + ".manufacturerIdentifier");
  }
}

void checker::check_declared_identifier(const std::string& value, const std::string& declared_type,
                                        const std::string& path) {
  if (value.empty()) {
    return;
  }
  std::string bare = normalize_pid_value(value);
  if (strings::iequals(declared_type, "URL")) {
    if (!strings::is_absolute_url(value)) {
      warning(violation_code::bad_url, path, "\"" + value + "\" is not an absolute URL");
    }
  } else if (strings::iequals(declared_type, "DOI")) {
    if (!pid::doi(bare).well_formed()) {
      warning(violation_code::bad_identifier_syntax, path,
              "\"" + value + "\" does not look like a DOI");
    }
  } else if (strings::iequals(declared_type, "Handle")) {
    if (!pid::handle(bare).well_formed()) {
      warning(violation_code::bad_identifier_syntax, path,
              "\"" + value + "\" does not look like a handle");
    }
  }
}

void checker::check_terms(const std::vector<typed_term>& terms, const std::string& field,
                          const std::string& scheme_id) {
  const auto* snap = scheme(scheme_id);
  for (size_t i = 0; i < terms.size(); ++i) {
    std::string path = field + "[" + std::to_string(i) + "]";
    const auto& term = terms[i];
    if (strings::trim(term.value).empty()) {
      error(violation_code::empty_value, path, "term value must not be empty");
      continue;
    }
    if (snap == nullptr) {
      continue;
    }
    if (strings::is_absolute_url(term.value)) {
      continue;  // concept URLs are accepted as-is; snapshots are excerpts
    }
    auto lookup = check_vocabulary(term.value, *snap);
    if (lookup.match == term_match::exact) {
      continue;
    }
    if (lookup.match == term_match::case_variant) {
      warning(violation_code::unknown_vocabulary_term, path,
              "\"" + term.value + "\" is a case variant of \"" + lookup.canonical +
                  "\" in scheme " + snap->scheme_id);
    } else {
      warning(violation_code::unknown_vocabulary_term, path,
              "free-text term \"" + term.value + "\"; a concept URL from scheme " +
                  snap->scheme_id + " is recommended");
    }
  }
}

void checker::check_dates(const instrument_record& r) {
  for (size_t i = 0; i < r.dates.size(); ++i) {
    const auto& d = r.dates[i];
    std::string base = "dates[" + std::to_string(i) + "]";
    if (!d.date.valid()) {
      error(violation_code::bad_date, base + ".date",
            "\"" + d.date.to_string() + "\" is not a valid calendar date");
    }
    if (d.type.token().empty()) {
      error(violation_code::empty_value, base + ".dateType", "dateType is required for every date");
    } else {
      check_term(d.type.token(), "dateType", base + ".dateType", /*closed=*/true,
                 /*warn_unknown=*/false);
    }
  }
}

void checker::check_alternate_identifiers(const instrument_record& r) {
  for (size_t i = 0; i < r.alternate_identifiers.size(); ++i) {
    const auto& alt = r.alternate_identifiers[i];
    std::string base = "alternate_identifiers[" + std::to_string(i) + "]";
    if (strings::trim(alt.value).empty()) {
      error(violation_code::empty_value, base + ".alternateIdentifierValue",
            "alternate identifier value must not be empty");
    }
    if (strings::trim(alt.type).empty()) {
      error(violation_code::empty_value, base + ".alternateIdentifierType",
            "alternateIdentifierType must not be empty");
    } else {
      // Free text, but case variants of recommended tokens (serialNumber
      // vs SerialNumber) get flagged to keep records searchable.
      check_term(alt.type, "alternateIdentifierType", base + ".alternateIdentifierType",
                 /*closed=*/false, /*warn_unknown=*/false);
    }
    for (size_t j = 0; j < i; ++j) {
      const auto& earlier = r.alternate_identifiers[j];
      if (earlier.value == alt.value && earlier.type == alt.type) {
        error(violation_code::duplicate_alternate_identifier, base,
              "duplicate of alternate_identifiers[" + std::to_string(j) + "] (\"" + alt.value +
                  "\", \"" + alt.type + "\")");
        break;
      }
    }
  }
}

void checker::check_related_identifiers(const instrument_record& r) {
  for (size_t i = 0; i < r.related_identifiers.size(); ++i) {
    const auto& rel = r.related_identifiers[i];
    std::string base = "related_identifiers[" + std::to_string(i) + "]";
    if (strings::trim(rel.value).empty()) {
      error(violation_code::empty_value, base + ".relatedIdentifierValue",
            "related identifier value must not be empty");
    }
    if (strings::trim(rel.identifier_type).empty()) {
      error(violation_code::empty_value, base + ".relatedIdentifierType",
            "relatedIdentifierType must not be empty");
    }
    if (rel.relation.token().empty()) {
      error(violation_code::empty_value, base + ".relationType", "relationType must not be empty");
    } else {
      check_term(rel.relation.token(), "relationType", base + ".relationType", /*closed=*/false,
                 /*warn_unknown=*/true);
    }
    check_declared_identifier(rel.value, rel.identifier_type, base + ".relatedIdentifierValue");
  }
}

void checker::run(const instrument_record& r) {
  check_identifier(r);
  if (strings::trim(r.landing_page).empty()) {
    error(violation_code::missing_mandatory, "landing_page", "landing page URL is required");
  } else if (!strings::is_absolute_url(r.landing_page)) {
    error(violation_code::bad_url, "landing_page",
          "\"" + r.landing_page + "\" is not an absolute URL");
  }
  if (strings::trim(r.name).empty()) {
    error(violation_code::missing_mandatory, "name", "instrument name is required");
  }
  check_owners(r);
  check_manufacturers(r);
  check_terms(r.instrument_types, "instrument_types", options_.instrument_type_scheme);
  check_terms(r.measured_variables, "measured_variables", options_.measured_variable_scheme);
  check_dates(r);
  check_alternate_identifiers(r);
  check_related_identifiers(r);
}

}  // namespace

validation_report validate(const instrument_record& record,
                           const std::vector<vocabulary_snapshot>& vocabularies,
                           const validate_options& options) {
  checker c(vocabularies, options);
  c.run(record);
  return c.take();
}

validation_report validate(const instrument_record& record, const validate_options& options) {
  static const std::vector<vocabulary_snapshot> defaults = default_vocabularies();
  return validate(record, defaults, options);
}

}  // namespace pidinst
