#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pidinst/json.hpp"
#include "pidinst/record.hpp"

namespace pidinst {

struct datacite_name {
  std::string name;
  std::string identifier;         // optional
  std::string identifier_scheme;  // optional

  bool operator==(const datacite_name&) const = default;
};

struct datacite_title {
  std::string title;
  std::string title_type;  // optional; controlled by DataCite

  bool operator==(const datacite_title&) const = default;
};

struct datacite_contributor {
  std::string name;
  std::string contributor_type;  // e.g. "HostingInstitution"

  bool operator==(const datacite_contributor&) const = default;
};

struct datacite_date {
  std::string date;
  std::string date_type;

  bool operator==(const datacite_date&) const = default;
};

struct datacite_alternate_identifier {
  std::string value;
  std::string type;

  bool operator==(const datacite_alternate_identifier&) const = default;
};

struct datacite_related_identifier {
  std::string value;
  std::string identifier_type;  // e.g. "DOI"
  std::string relation_type;    // DataCite 4.3 token

  bool operator==(const datacite_related_identifier&) const = default;
};

struct datacite_description {
  std::string text;
  std::string description_type;  // e.g. "Abstract"

  bool operator==(const datacite_description&) const = default;
};

struct datacite_subject {
  std::string subject;
  std::string scheme;  // optional

  bool operator==(const datacite_subject&) const = default;
};

struct datacite_resource_type {
  std::string general;   // DataCite 4.3 resourceTypeGeneral token
  std::string specific;  // free text, "Instrument" here

  bool operator==(const datacite_resource_type&) const = default;
};

/// DataCite-4.3-shaped projection of an instrument record.
struct datacite_record {
  pid doi;  // the instrument PID; handles are carried with their own type
  std::string url;
  std::vector<datacite_name> creators;
  std::vector<datacite_title> titles;
  std::string publisher;
  int publication_year = 0;
  datacite_resource_type resource_type;
  std::vector<datacite_contributor> contributors;
  std::vector<datacite_date> dates;
  std::vector<datacite_alternate_identifier> alternate_identifiers;
  std::vector<datacite_related_identifier> related_identifiers;
  std::vector<datacite_description> descriptions;
  std::vector<datacite_subject> subjects;

  bool operator==(const datacite_record&) const = default;
};

/// Who takes the creator slot. Custom-built instruments list the owning
/// institution as creator and contributor (HostingInstitution);
/// purchased instruments may credit the manufacturer instead.
enum class creator_policy { owner_as_creator, manufacturer_as_creator };

struct datacite_options {
  std::string publisher;
  int publication_year = 0;
  creator_policy policy = creator_policy::owner_as_creator;
};

struct datacite_conversion {
  datacite_record record;
  /// Lossy steps taken: relation types mapped to a DataCite equivalent
  /// or dropped because none exists.
  std::vector<std::string> warnings;
};

/// Projects a valid record onto the DataCite shape. Total on valid
/// records; never emits a relation type outside the DataCite 4.3 list.
/// The model name, which DataCite has no property for, is carried as an
/// extra title with titleType "Other" and prefix "Model: "; the resource
/// type is ("Other", "Instrument") since the controlled list has no
/// instrument value.
datacite_conversion to_datacite(const instrument_record& record, const datacite_options& options);

enum class datacite_format { xml, json };

/// Deterministic rendering. JSON output is compact (one line); XML
/// follows the kernel-4 element layout. Throws error if the record
/// violates DataCite 4.3 shape invariants.
std::string render_datacite(const datacite_record& dc, datacite_format format);

/// True when the token is a DataCite 4.3 relationType value.
bool datacite_relation_allowed(std::string_view token);

/// True when the token is a DataCite 4.3 resourceTypeGeneral value.
bool datacite_resource_type_allowed(std::string_view token);

/// DataCite 4.3 equivalent for a relation, or nullopt when it cannot be
/// represented (WasUsedIn and unknown free-text relations).
std::optional<std::string> datacite_relation_for(const relation_type& relation);

}  // namespace pidinst
