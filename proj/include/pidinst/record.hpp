#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pidinst/pid.hpp"

namespace pidinst {

/// Calendar date, stored without range enforcement so that syntactically
/// well-shaped but impossible dates (month 13) survive parsing and reach
/// the validator as report entries instead of exceptions.
struct calendar_date {
  int year = 0;
  int month = 0;
  int day = 0;

  bool valid() const;
  std::string to_string() const;  // YYYY-MM-DD

  /// Accepts the YYYY-MM-DD digit shape; returns nullopt otherwise.
  static std::optional<calendar_date> parse(std::string_view text);

  bool operator==(const calendar_date&) const = default;
};

/// Lifecycle date qualifier. The controlled list is {Commissioned,
/// DeCommissioned}; unknown tokens are preserved so the validator can
/// report them (and so deployments can extend the list by configuration).
class date_type {
 public:
  enum class kind { commissioned, decommissioned, other };

  date_type() = default;
  explicit date_type(std::string_view token);
  static date_type commissioned() { return date_type("Commissioned"); }
  static date_type decommissioned() { return date_type("DeCommissioned"); }

  kind which() const { return kind_; }
  const std::string& token() const { return token_; }

  bool operator==(const date_type&) const = default;

 private:
  kind kind_ = kind::other;
  std::string token_;
};

/// Relation between the instrument and another persistently identified
/// entity. Known kinds cover the relations used for instrument papers
/// (IsDescribedBy), linked technical metadata (HasMetadata), component
/// decomposition (HasComponent/IsComponentOf), versioning, and usage
/// events (WasUsedIn); anything else is carried verbatim as other.
class relation_type {
 public:
  enum class kind {
    is_described_by,
    has_metadata,
    has_component,
    is_component_of,
    is_new_version_of,
    is_previous_version_of,
    was_used_in,
    other,
  };

  relation_type() = default;
  /// Trims the token and maps known spellings (exact match) to their kind.
  explicit relation_type(std::string_view token);
  static relation_type from(kind k);

  kind which() const { return kind_; }
  const std::string& token() const { return token_; }

  bool operator==(const relation_type&) const = default;

 private:
  kind kind_ = kind::other;
  std::string token_;
};

struct owner {
  std::string owner_name;
  std::string owner_contact;             // optional, empty when absent
  std::string owner_identifier;          // optional
  std::string owner_identifier_type;     // required when owner_identifier set

  bool operator==(const owner&) const = default;
};

struct manufacturer {
  std::string manufacturer_name;
  std::string model_name;                    // optional
  std::string manufacturer_identifier;       // optional
  std::string manufacturer_identifier_type;  // required when identifier set

  bool operator==(const manufacturer&) const = default;
};

struct instrument_date {
  calendar_date date;
  date_type type;

  bool operator==(const instrument_date&) const = default;
};

struct alternate_identifier {
  std::string value;
  std::string type;  // free text; recommended token "SerialNumber"

  bool operator==(const alternate_identifier&) const = default;
};

struct related_identifier {
  std::string value;
  std::string identifier_type;  // e.g. "DOI", "URL", "Handle"
  relation_type relation;

  bool operator==(const related_identifier&) const = default;
};

/// Free-text or concept-URL classification term (instrument types,
/// measured variables). scheme_hint optionally names the vocabulary the
/// term was drawn from.
struct typed_term {
  std::string value;
  std::string scheme_hint;  // optional

  bool operator==(const typed_term&) const = default;
};

/// Full metadata description of one physical instrument.
struct instrument_record {
  std::optional<pid> identifier;
  std::string identifier_type;  // e.g. "MeasuringInstrument"
  std::string landing_page;
  std::string name;
  std::vector<owner> owners;
  std::vector<manufacturer> manufacturers;
  std::string description;  // optional
  std::vector<typed_term> instrument_types;
  std::vector<typed_term> measured_variables;
  std::vector<instrument_date> dates;
  std::vector<alternate_identifier> alternate_identifiers;
  std::vector<related_identifier> related_identifiers;

  bool operator==(const instrument_record&) const = default;
};

}  // namespace pidinst
