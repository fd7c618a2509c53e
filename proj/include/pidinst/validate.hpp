#pragma once

#include <string>
#include <vector>

#include "pidinst/json.hpp"
#include "pidinst/record.hpp"
#include "pidinst/vocabulary.hpp"

namespace pidinst {

enum class violation_code {
  missing_mandatory,
  empty_value,
  bad_identifier_syntax,
  unknown_vocabulary_term,
  duplicate_alternate_identifier,
  bad_date,
  bad_url,
};

enum class violation_severity { error, warning };

std::string to_string(violation_code code);
std::string to_string(violation_severity severity);

struct violation {
  violation_code code;
  std::string path;  // e.g. "owners[0].ownerName"
  std::string message;
  violation_severity severity;
};

/// Outcome of validating one record. A record is valid iff no
/// error-severity entry is present; warnings never block.
struct validation_report {
  std::vector<violation> violations;

  bool valid() const;
  size_t error_count() const;
  size_t warning_count() const;
  json to_json() const;
};

struct validate_options {
  /// Minting assigns the identifier, so pre-mint validation runs with
  /// this set; identifier and identifier_type may then be absent.
  bool allow_missing_identifier = false;
  /// Scheme ids consulted for classification terms, when present among
  /// the supplied vocabularies.
  std::string instrument_type_scheme = "L22-instrument-types";
  std::string measured_variable_scheme = "P01-measured-variables";
};

/// Checks mandatory properties, identifier/URL/date syntax, duplicate
/// alternate identifiers, and controlled-vocabulary terms. Total: every
/// problem becomes a report entry, never an exception, and the report
/// lists all of them ordered by (path, code). Soft-typed free-text
/// fields produce at most warnings for unknown terms; the closed
/// dateType list produces errors (extend it by supplying a replacement
/// "dateType" snapshot).
validation_report validate(const instrument_record& record,
                           const std::vector<vocabulary_snapshot>& vocabularies,
                           const validate_options& options = {});

/// validate() against the built-in vocabularies.
validation_report validate(const instrument_record& record, const validate_options& options = {});

}  // namespace pidinst
