#include "pidinst/canonical.hpp"

#include <string>
#include <utility>

#include "pidinst/errors.hpp"
#include "pidinst/strings.hpp"

namespace pidinst {

namespace {

std::pair<size_t, size_t> line_column(std::string_view text, size_t byte_offset) {
  size_t line = 1;
  size_t column = 1;
  for (size_t i = 0; i < byte_offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::string expect_string(const json& j, const std::string& path) {
  if (!j.is_string()) {
    throw type_mismatch_error(path, "expected a string");
  }
  return j.get<std::string>();
}

const json& expect_array(const json& j, const std::string& path) {
  if (!j.is_array()) {
    throw type_mismatch_error(path, "expected an array");
  }
  return j;
}

const json& expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) {
    throw type_mismatch_error(path, "expected an object");
  }
  return j;
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> known,
                         const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    bool found = false;
    for (auto k : known) {
      if (key == k) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw unknown_property_error(key, path);
    }
  }
}

std::string optional_string(const json& obj, std::string_view key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    return {};
  }
  return expect_string(*it, path + "." + std::string(key));
}

typed_term parse_typed_term(const json& j, std::string_view value_key, const std::string& path) {
  typed_term term;
  if (j.is_string()) {
    term.value = j.get<std::string>();
    return term;
  }
  if (!j.is_object()) {
    throw type_mismatch_error(path, "expected a string or an object");
  }
  const json& obj = j;
  reject_unknown_keys(obj, {value_key, "schemeName"}, path);
  auto it = obj.find(value_key);
  if (it == obj.end()) {
    throw type_mismatch_error(path, "expected key \"" + std::string(value_key) + "\"");
  }
  term.value = expect_string(*it, path + "." + std::string(value_key));
  term.scheme_hint = optional_string(obj, "schemeName", path);
  return term;
}

json typed_term_to_json(const typed_term& term, std::string_view value_key) {
  if (term.scheme_hint.empty()) {
    return json(term.value);
  }
  json j = json::object();
  j[std::string(value_key)] = term.value;
  j["schemeName"] = term.scheme_hint;
  return j;
}

}  // namespace

json record_to_json(const instrument_record& r) {
  json j = json::object();
  if (r.identifier && !r.identifier->value().empty()) {
    j["Identifier"] = r.identifier->value();
  }
  if (!r.identifier_type.empty()) {
    j["identifierType"] = r.identifier_type;
  }
  if (!r.landing_page.empty()) {
    j["LandingPage"] = r.landing_page;
  }
  if (!r.alternate_identifiers.empty()) {
    json arr = json::array();
    for (const auto& alt : r.alternate_identifiers) {
      json item = json::object();
      item["AlternateIdentifier"] = alt.value;
      item["alternateIdentifierType"] = alt.type;
      arr.push_back(std::move(item));
    }
    j["AlternateIdentifier"] = std::move(arr);
  }
  if (!r.name.empty()) {
    j["Name"] = r.name;
  }
  if (!r.description.empty()) {
    j["Description"] = r.description;
  }
  if (!r.instrument_types.empty()) {
    json arr = json::array();
    for (const auto& t : r.instrument_types) {
      arr.push_back(typed_term_to_json(t, "InstrumentType"));
    }
    j["InstrumentType"] = std::move(arr);
  }
  if (!r.owners.empty()) {
    json arr = json::array();
    for (const auto& o : r.owners) {
      json item = json::object();
      item["ownerName"] = o.owner_name;
      if (!o.owner_contact.empty()) {
        item["ownerContact"] = o.owner_contact;
      }
      if (!o.owner_identifier.empty()) {
        item["ownerIdentifier"] = o.owner_identifier;
      }
      if (!o.owner_identifier_type.empty()) {
        item["ownerIdentifierType"] = o.owner_identifier_type;
      }
      arr.push_back(std::move(item));
    }
    j["Owner"] = std::move(arr);
  }
  if (!r.manufacturers.empty()) {
    json arr = json::array();
    for (const auto& m : r.manufacturers) {
      json item = json::object();
      item["manufacturerName"] = m.manufacturer_name;
      if (!m.model_name.empty()) {
        item["modelName"] = m.model_name;
      }
      if (!m.manufacturer_identifier.empty()) {
        item["manufacturerIdentifier"] = m.manufacturer_identifier;
      }
      if (!m.manufacturer_identifier_type.empty()) {
        item["manufacturerIdentifierType"] = m.manufacturer_identifier_type;
      }
      arr.push_back(std::move(item));
    }
    j["Manufacturer"] = std::move(arr);
  }
  if (!r.dates.empty()) {
    json arr = json::array();
    for (const auto& d : r.dates) {
      json item = json::object();
      item["Date"] = d.date.to_string();
      item["dateType"] = d.type.token();
      arr.push_back(std::move(item));
    }
    j["Date"] = std::move(arr);
  }
  if (!r.measured_variables.empty()) {
    json arr = json::array();
    for (const auto& v : r.measured_variables) {
      arr.push_back(typed_term_to_json(v, "VariableMeasured"));
    }
    j["VariableMeasured"] = std::move(arr);
  }
  if (!r.related_identifiers.empty()) {
    json arr = json::array();
    for (const auto& rel : r.related_identifiers) {
      json item = json::object();
      item["RelatedIdentifier"] = rel.value;
      item["relatedIdentifierType"] = rel.identifier_type;
      item["relationType"] = rel.relation.token();
      arr.push_back(std::move(item));
    }
    j["RelatedIdentifier"] = std::move(arr);
  }
  return j;
}

instrument_record record_from_json(const json& root) {
  const json& obj = expect_object(root, "$");
  reject_unknown_keys(obj,
                      {"Identifier", "identifierType", "LandingPage", "AlternateIdentifier",
                       "Name", "Description", "InstrumentType", "Owner", "Manufacturer", "Date",
                       "VariableMeasured", "RelatedIdentifier"},
                      "$");

  instrument_record r;
  if (auto it = obj.find("Identifier"); it != obj.end()) {
    auto value = expect_string(*it, "$.Identifier");
    if (!strings::trim(value).empty()) {
      r.identifier = pid::infer(value);
    }
  }
  r.identifier_type = optional_string(obj, "identifierType", "$");
  r.landing_page = optional_string(obj, "LandingPage", "$");
  r.name = optional_string(obj, "Name", "$");
  r.description = optional_string(obj, "Description", "$");

  if (auto it = obj.find("AlternateIdentifier"); it != obj.end()) {
    size_t i = 0;
    for (const auto& item : expect_array(*it, "$.AlternateIdentifier")) {
      std::string path = "$.AlternateIdentifier[" + std::to_string(i++) + "]";
      const json& o = expect_object(item, path);
      reject_unknown_keys(o, {"AlternateIdentifier", "alternateIdentifierType"}, path);
      alternate_identifier alt;
      alt.value = optional_string(o, "AlternateIdentifier", path);
      alt.type = optional_string(o, "alternateIdentifierType", path);
      r.alternate_identifiers.push_back(std::move(alt));
    }
  }
  if (auto it = obj.find("InstrumentType"); it != obj.end()) {
    size_t i = 0;
    for (const auto& item : expect_array(*it, "$.InstrumentType")) {
      std::string path = "$.InstrumentType[" + std::to_string(i++) + "]";
      r.instrument_types.push_back(parse_typed_term(item, "InstrumentType", path));
    }
  }
  if (auto it = obj.find("Owner"); it != obj.end()) {
    size_t i = 0;
    for (const auto& item : expect_array(*it, "$.Owner")) {
      std::string path = "$.Owner[" + std::to_string(i++) + "]";
      const json& o = expect_object(item, path);
      reject_unknown_keys(o, {"ownerName", "ownerContact", "ownerIdentifier", "ownerIdentifierType"},
                          path);
      owner ow;
      ow.owner_name = optional_string(o, "ownerName", path);
      ow.owner_contact = optional_string(o, "ownerContact", path);
      ow.owner_identifier = optional_string(o, "ownerIdentifier", path);
      ow.owner_identifier_type = optional_string(o, "ownerIdentifierType", path);
      r.owners.push_back(std::move(ow));
    }
  }
  if (auto it = obj.find("Manufacturer"); it != obj.end()) {
    size_t i = 0;
    for (const auto& item : expect_array(*it, "$.Manufacturer")) {
      std::string path = "$.Manufacturer[" + std::to_string(i++) + "]";
      const json& o = expect_object(item, path);
      reject_unknown_keys(
          o, {"manufacturerName", "modelName", "manufacturerIdentifier", "manufacturerIdentifierType"},
          path);
      manufacturer m;
      m.manufacturer_name = optional_string(o, "manufacturerName", path);
      m.model_name = optional_string(o, "modelName", path);
      m.manufacturer_identifier = optional_string(o, "manufacturerIdentifier", path);
      m.manufacturer_identifier_type = optional_string(o, "manufacturerIdentifierType", path);
      r.manufacturers.push_back(std::move(m));
    }
  }
  if (auto it = obj.find("Date"); it != obj.end()) {
    size_t i = 0;
    for (const auto& item : expect_array(*it, "$.Date")) {
      std::string path = "$.Date[" + std::to_string(i++) + "]";
      const json& o = expect_object(item, path);
      reject_unknown_keys(o, {"Date", "dateType"}, path);
      auto date_text = optional_string(o, "Date", path);
      auto parsed = calendar_date::parse(date_text);
      if (!parsed) {
        throw type_mismatch_error(path + ".Date", "expected YYYY-MM-DD, got \"" + date_text + "\"");
      }
      instrument_date d;
      d.date = *parsed;
      d.type = date_type(optional_string(o, "dateType", path));
      r.dates.push_back(std::move(d));
    }
  }
  if (auto it = obj.find("VariableMeasured"); it != obj.end()) {
    size_t i = 0;
    for (const auto& item : expect_array(*it, "$.VariableMeasured")) {
      std::string path = "$.VariableMeasured[" + std::to_string(i++) + "]";
      r.measured_variables.push_back(parse_typed_term(item, "VariableMeasured", path));
    }
  }
  if (auto it = obj.find("RelatedIdentifier"); it != obj.end()) {
    size_t i = 0;
    for (const auto& item : expect_array(*it, "$.RelatedIdentifier")) {
      std::string path = "$.RelatedIdentifier[" + std::to_string(i++) + "]";
      const json& o = expect_object(item, path);
      reject_unknown_keys(o, {"RelatedIdentifier", "relatedIdentifierType", "relationType"}, path);
      related_identifier rel;
      rel.value = optional_string(o, "RelatedIdentifier", path);
      rel.identifier_type = optional_string(o, "relatedIdentifierType", path);
      rel.relation = relation_type(optional_string(o, "relationType", path));
      r.related_identifiers.push_back(std::move(rel));
    }
  }
  return r;
}

instrument_record parse_record(std::string_view input) {
  json root;
  try {
    root = json::parse(input);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = line_column(input, e.byte > 0 ? e.byte - 1 : 0);
    throw syntax_error(e.what(), line, column);
  }
  return record_from_json(root);
}

std::string canonicalize(const instrument_record& record) {
  return record_to_json(record).dump(2) + "\n";
}

}  // namespace pidinst
