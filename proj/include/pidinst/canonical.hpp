#pragma once

#include <string>
#include <string_view>

#include "pidinst/json.hpp"
#include "pidinst/record.hpp"

namespace pidinst {

/// Parses the canonical interchange form (UTF-8 JSON, PIDINST property
/// names) into a record. Shape checks only: mandatory-property and
/// vocabulary rules belong to the validator, so a record with, say, an
/// impossible date still parses and can be reported on. Unknown
/// properties are rejected, not dropped.
///
/// Throws syntax_error, unknown_property_error, type_mismatch_error.
instrument_record parse_record(std::string_view input);

/// Renders the canonical form: fixed property order, fixed key casing,
/// empty optional properties omitted, 2-space indent, trailing newline.
/// parse_record(canonicalize(r)) == r for every in-memory record, and
/// canonicalize is a fixpoint on its own output.
std::string canonicalize(const instrument_record& record);

/// The record as a canonical JSON value (the object canonicalize dumps).
json record_to_json(const instrument_record& record);

/// Inverse of record_to_json; same errors as parse_record.
instrument_record record_from_json(const json& j);

}  // namespace pidinst
