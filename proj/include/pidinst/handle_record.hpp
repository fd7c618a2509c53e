#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pidinst/json.hpp"
#include "pidinst/record.hpp"

namespace pidinst {

/// First-level schema properties that have their own typed entry in a
/// handle record, in serialization order.
enum class schema_property {
  identifier,
  landing_page,
  name,
  owners,
  manufacturers,
  description,
  instrument_type,
  measured_variables,
  dates,
  alternate_identifiers,
  related_identifiers,
};

std::string_view property_name(schema_property p);

/// Bijective mapping from schema property to the type handle that
/// identifies the property definition in a data type registry.
class type_handle_map {
 public:
  /// Throws error if a type handle is reused across properties.
  explicit type_handle_map(std::vector<std::pair<schema_property, std::string>> entries);

  /// The registered production mapping.
  static const type_handle_map& defaults();

  const std::string& type_handle(schema_property p) const;  // throws missing_type_handle_error
  std::optional<schema_property> property(std::string_view type_handle) const;

  const std::vector<std::pair<schema_property, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<schema_property, std::string>> entries_;
};

struct handle_entry {
  int index = 0;
  std::string type;  // "URL" or a type handle
  std::string data;  // raw text; compound entries hold compact JSON

  bool operator==(const handle_entry&) const = default;
};

/// Ordered list of typed entries stored against one handle. Entry 1 is
/// always the URL entry the resolver redirects to.
struct handle_record {
  pid handle;
  std::vector<handle_entry> entries;

  /// Unique ascending indices, exactly one URL entry, each type handle
  /// at most once. Returns a description of the first violation.
  std::optional<std::string> invariant_violation() const;

  bool operator==(const handle_record&) const = default;
};

struct handle_options {
  /// Resolver base used for the identifier entry's URL form.
  std::string resolver_base = std::string(default_handle_resolver);
  /// Also duplicate Name and LandingPage as lightweight NAME /
  /// LANDING_PAGE entries readable at the resolver level.
  bool emit_info_types = false;
};

/// Serializes a record into its handle-record form: the URL entry first,
/// then one typed entry per populated property in registry order.
/// Compound properties nest one wrapper object per element, e.g.
/// [{"Owner": {"ownerName": ..., "ownerIdentifier": {...}}}].
/// Requires a record that validates clean; throws missing_mandatory_error
/// when identifier or landing page are absent and missing_type_handle_error
/// when the map lacks a populated property.
handle_record to_handle_record(const instrument_record& record,
                               const type_handle_map& types = type_handle_map::defaults(),
                               const handle_options& options = {});

/// Inverse of to_handle_record. Throws unknown_type_handle_error,
/// malformed_entry_error (with the entry index), missing_mandatory_error.
instrument_record from_handle_record(const handle_record& hr,
                                     const type_handle_map& types = type_handle_map::defaults());

/// JSON form: {"handle": ..., "values": [{"index", "type", "data"}...]}.
/// Object/array entry data is embedded structurally, everything else as
/// a string.
json handle_record_to_json(const handle_record& hr);
handle_record handle_record_from_json(const json& j);  // throws error / malformed_entry_error

/// Pretty text rendering of the JSON form (golden-file and CLI format).
std::string render_handle_record(const handle_record& hr);
handle_record parse_handle_record(std::string_view text);

}  // namespace pidinst
