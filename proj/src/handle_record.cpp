#include "pidinst/handle_record.hpp"

#include <algorithm>
#include <set>

#include "pidinst/errors.hpp"
#include "pidinst/strings.hpp"

namespace pidinst {

namespace {

// Lightweight information types duplicated into the record when
// handle_options::emit_info_types is set.
constexpr std::string_view info_type_name = "NAME";
constexpr std::string_view info_type_landing_page = "LANDING_PAGE";

json parse_entry_json(const handle_entry& e) {
  try {
    return json::parse(e.data);
  } catch (const nlohmann::json::parse_error& err) {
    throw malformed_entry_error(e.index, err.what());
  }
}

std::string expect_entry_string(const json& j, const char* key, int index) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw malformed_entry_error(index, std::string("expected string key \"") + key + "\"");
  }
  return it->get<std::string>();
}

json typed_term_json(const typed_term& t, const char* value_key) {
  if (t.scheme_hint.empty()) {
    return json(t.value);
  }
  json j = json::object();
  j[value_key] = t.value;
  j["schemeName"] = t.scheme_hint;
  return j;
}

typed_term typed_term_from_json(const json& j, const char* value_key, int index) {
  typed_term t;
  if (j.is_string()) {
    t.value = j.get<std::string>();
    return t;
  }
  if (!j.is_object()) {
    throw malformed_entry_error(index, "expected a string or object term");
  }
  t.value = expect_entry_string(j, value_key, index);
  if (auto it = j.find("schemeName"); it != j.end() && it->is_string()) {
    t.scheme_hint = it->get<std::string>();
  }
  return t;
}

}  // namespace

std::string_view property_name(schema_property p) {
  switch (p) {
    case schema_property::identifier:
      return "Identifier";
    case schema_property::landing_page:
      return "LandingPage";
    case schema_property::name:
      return "Name";
    case schema_property::owners:
      return "Owners";
    case schema_property::manufacturers:
      return "Manufacturers";
    case schema_property::description:
      return "Description";
    case schema_property::instrument_type:
      return "InstrumentType";
    case schema_property::measured_variables:
      return "MeasuredVariables";
    case schema_property::dates:
      return "Dates";
    case schema_property::alternate_identifiers:
      return "AlternateIdentifiers";
    case schema_property::related_identifiers:
      return "RelatedIdentifiers";
  }
  return "";
}

type_handle_map::type_handle_map(std::vector<std::pair<schema_property, std::string>> entries)
    : entries_(std::move(entries)) {
  std::set<std::string> seen;
  for (const auto& [prop, th] : entries_) {
    if (th.empty()) {
      throw error(std::string("empty type handle for property ") +
                  std::string(property_name(prop)));
    }
    if (!seen.insert(th).second) {
      throw error("type handle mapped to more than one property: " + th);
    }
  }
}

const type_handle_map& type_handle_map::defaults() {
  static const type_handle_map map({
      {schema_property::identifier, "21.T11148/8eb858ee0b12e8e463a5"},
      {schema_property::landing_page, "21.T11148/9a15a4735d4bda329d80"},
      {schema_property::name, "21.T11148/709a23220f2c3d64d1e1"},
      {schema_property::owners, "21.T11148/4eaec4bc0f1df68ab2a7"},
      {schema_property::manufacturers, "21.T11148/1f3e82ddf0697a497432"},
      {schema_property::description, "21.T11148/55f8ebc805e65b5b71dd"},
      {schema_property::instrument_type, "21.T11148/f76ad9d0324302fc47dd"},
      {schema_property::measured_variables, "21.T11148/72928b84e060d491ee41"},
      {schema_property::dates, "21.T11148/22c62082a4d2d9ae2602"},
      {schema_property::alternate_identifiers, "21.T11148/eb3c713572f681e6c4c3"},
      {schema_property::related_identifiers, "21.T11148/178fb558abc755ca7046"},
  });
  return map;
}

const std::string& type_handle_map::type_handle(schema_property p) const {
  for (const auto& [prop, th] : entries_) {
    if (prop == p) {
      return th;
    }
  }
  throw missing_type_handle_error(std::string(property_name(p)));
}

std::optional<schema_property> type_handle_map::property(std::string_view type_handle) const {
  for (const auto& [prop, th] : entries_) {
    if (th == type_handle) {
      return prop;
    }
  }
  return std::nullopt;
}

std::optional<std::string> handle_record::invariant_violation() const {
  int last_index = 0;
  int url_entries = 0;
  std::set<std::string> seen_types;
  for (const auto& e : entries) {
    if (e.index <= last_index) {
      return "entry indices must be unique and ascending (offending index " +
             std::to_string(e.index) + ")";
    }
    last_index = e.index;
    if (e.type == "URL") {
      ++url_entries;
    } else if (e.type != info_type_name && e.type != info_type_landing_page) {
      if (!seen_types.insert(e.type).second) {
        return "type appears more than once: " + e.type;
      }
    }
  }
  if (url_entries != 1) {
    return "expected exactly one URL entry, found " + std::to_string(url_entries);
  }
  return std::nullopt;
}

handle_record to_handle_record(const instrument_record& r, const type_handle_map& types,
                               const handle_options& options) {
  if (!r.identifier || r.identifier->empty()) {
    throw missing_mandatory_error("identifier");
  }
  if (r.landing_page.empty()) {
    throw missing_mandatory_error("landing_page");
  }
  if (r.name.empty()) {
    throw missing_mandatory_error("name");
  }
  if (r.owners.empty()) {
    throw missing_mandatory_error("owners");
  }
  if (r.manufacturers.empty()) {
    throw missing_mandatory_error("manufacturers");
  }

  handle_record hr;
  hr.handle = *r.identifier;
  int index = 1;
  auto add = [&](std::string type, std::string data) {
    hr.entries.push_back({index++, std::move(type), std::move(data)});
  };

  add("URL", r.landing_page);

  {
    json id = json::object();
    auto url = r.identifier->display_url(options.resolver_base);
    id["identifierValue"] = url ? *url : r.identifier->value();
    id["identifierType"] = r.identifier_type;
    add(types.type_handle(schema_property::identifier), id.dump());
  }

  add(types.type_handle(schema_property::landing_page), r.landing_page);
  add(types.type_handle(schema_property::name), r.name);

  {
    json arr = json::array();
    for (const auto& o : r.owners) {
      json inner = json::object();
      inner["ownerName"] = o.owner_name;
      if (!o.owner_contact.empty()) {
        inner["ownerContact"] = o.owner_contact;
      }
      if (!o.owner_identifier.empty() || !o.owner_identifier_type.empty()) {
        json oid = json::object();
        oid["ownerIdentifierValue"] = o.owner_identifier;
        oid["ownerIdentifierType"] = o.owner_identifier_type;
        inner["ownerIdentifier"] = std::move(oid);
      }
      json wrapper = json::object();
      wrapper["Owner"] = std::move(inner);
      arr.push_back(std::move(wrapper));
    }
    add(types.type_handle(schema_property::owners), arr.dump());
  }

  {
    json arr = json::array();
    for (const auto& m : r.manufacturers) {
      json inner = json::object();
      inner["manufacturerName"] = m.manufacturer_name;
      if (!m.model_name.empty()) {
        inner["modelName"] = m.model_name;
      }
      if (!m.manufacturer_identifier.empty() || !m.manufacturer_identifier_type.empty()) {
        json mid = json::object();
        mid["manufacturerIdentifierValue"] = m.manufacturer_identifier;
        mid["manufacturerIdentifierType"] = m.manufacturer_identifier_type;
        inner["manufacturerIdentifier"] = std::move(mid);
      }
      json wrapper = json::object();
      wrapper["Manufacturer"] = std::move(inner);
      arr.push_back(std::move(wrapper));
    }
    add(types.type_handle(schema_property::manufacturers), arr.dump());
  }

  if (!r.description.empty()) {
    add(types.type_handle(schema_property::description), r.description);
  }

  if (!r.instrument_types.empty()) {
    if (r.instrument_types.size() == 1) {
      const auto& t = r.instrument_types.front();
      json single = typed_term_json(t, "InstrumentType");
      if (single.is_string()) {
        // Plain text unless it would read back as structured JSON.
        json probe = json::parse(t.value, nullptr, false);
        if (probe.is_discarded()) {
          add(types.type_handle(schema_property::instrument_type), t.value);
        } else {
          add(types.type_handle(schema_property::instrument_type), single.dump());
        }
      } else {
        add(types.type_handle(schema_property::instrument_type), single.dump());
      }
    } else {
      json arr = json::array();
      for (const auto& t : r.instrument_types) {
        arr.push_back(typed_term_json(t, "InstrumentType"));
      }
      add(types.type_handle(schema_property::instrument_type), arr.dump());
    }
  }

  if (!r.measured_variables.empty()) {
    json arr = json::array();
    for (const auto& v : r.measured_variables) {
      json wrapper = json::object();
      wrapper["MeasuredVariable"] = json::object();
      wrapper["MeasuredVariable"]["VariableMeasured"] = typed_term_json(v, "VariableMeasured");
      arr.push_back(std::move(wrapper));
    }
    add(types.type_handle(schema_property::measured_variables), arr.dump());
  }

  if (!r.dates.empty()) {
    json arr = json::array();
    for (const auto& d : r.dates) {
      json inner = json::object();
      inner["date"] = d.date.to_string();
      inner["dateType"] = d.type.token();
      json wrapper = json::object();
      wrapper["date"] = std::move(inner);
      arr.push_back(std::move(wrapper));
    }
    add(types.type_handle(schema_property::dates), arr.dump());
  }

  if (!r.alternate_identifiers.empty()) {
    json arr = json::array();
    for (const auto& a : r.alternate_identifiers) {
      json inner = json::object();
      inner["AlternateIdentifierValue"] = a.value;
      inner["alternateIdentifierType"] = a.type;
      json wrapper = json::object();
      wrapper["AlternateIdentifier"] = std::move(inner);
      arr.push_back(std::move(wrapper));
    }
    add(types.type_handle(schema_property::alternate_identifiers), arr.dump());
  }

  if (!r.related_identifiers.empty()) {
    json arr = json::array();
    for (const auto& rel : r.related_identifiers) {
      json inner = json::object();
      inner["RelatedIdentifierValue"] = rel.value;
      inner["RelatedIdentifierType"] = rel.identifier_type;
      inner["relationType"] = rel.relation.token();
      json wrapper = json::object();
      wrapper["RelatedIdentifier"] = std::move(inner);
      arr.push_back(std::move(wrapper));
    }
    add(types.type_handle(schema_property::related_identifiers), arr.dump());
  }

  if (options.emit_info_types) {
    add(std::string(info_type_name), r.name);
    add(std::string(info_type_landing_page), r.landing_page);
  }

  return hr;
}

namespace {

void read_owner_entry(const handle_entry& e, instrument_record& r) {
  json arr = parse_entry_json(e);
  if (!arr.is_array()) {
    throw malformed_entry_error(e.index, "Owners data must be an array");
  }
  for (const auto& wrapper : arr) {
    if (!wrapper.is_object() || !wrapper.contains("Owner") || !wrapper["Owner"].is_object()) {
      throw malformed_entry_error(e.index, "expected {\"Owner\": {...}} elements");
    }
    const json& inner = wrapper["Owner"];
    owner o;
    o.owner_name = expect_entry_string(inner, "ownerName", e.index);
    if (auto it = inner.find("ownerContact"); it != inner.end() && it->is_string()) {
      o.owner_contact = it->get<std::string>();
    }
    if (auto it = inner.find("ownerIdentifier"); it != inner.end()) {
      if (!it->is_object()) {
        throw malformed_entry_error(e.index, "ownerIdentifier must be an object");
      }
      o.owner_identifier = it->value("ownerIdentifierValue", std::string());
      o.owner_identifier_type = it->value("ownerIdentifierType", std::string());
    }
    r.owners.push_back(std::move(o));
  }
}

void read_manufacturer_entry(const handle_entry& e, instrument_record& r) {
  json arr = parse_entry_json(e);
  if (!arr.is_array()) {
    throw malformed_entry_error(e.index, "Manufacturers data must be an array");
  }
  for (const auto& wrapper : arr) {
    if (!wrapper.is_object() || !wrapper.contains("Manufacturer") ||
        !wrapper["Manufacturer"].is_object()) {
      throw malformed_entry_error(e.index, "expected {\"Manufacturer\": {...}} elements");
    }
    const json& inner = wrapper["Manufacturer"];
    manufacturer m;
    m.manufacturer_name = expect_entry_string(inner, "manufacturerName", e.index);
    if (auto it = inner.find("modelName"); it != inner.end() && it->is_string()) {
      m.model_name = it->get<std::string>();
    }
    if (auto it = inner.find("manufacturerIdentifier"); it != inner.end()) {
      if (!it->is_object()) {
        throw malformed_entry_error(e.index, "manufacturerIdentifier must be an object");
      }
      m.manufacturer_identifier = it->value("manufacturerIdentifierValue", std::string());
      m.manufacturer_identifier_type = it->value("manufacturerIdentifierType", std::string());
    }
    r.manufacturers.push_back(std::move(m));
  }
}

void read_instrument_type_entry(const handle_entry& e, instrument_record& r) {
  json parsed = json::parse(e.data, nullptr, false);
  if (parsed.is_discarded()) {
    r.instrument_types.push_back({e.data, {}});
    return;
  }
  if (parsed.is_array()) {
    for (const auto& item : parsed) {
      r.instrument_types.push_back(typed_term_from_json(item, "InstrumentType", e.index));
    }
  } else {
    r.instrument_types.push_back(typed_term_from_json(parsed, "InstrumentType", e.index));
  }
}

void read_measured_variables_entry(const handle_entry& e, instrument_record& r) {
  json arr = parse_entry_json(e);
  if (!arr.is_array()) {
    throw malformed_entry_error(e.index, "MeasuredVariables data must be an array");
  }
  for (const auto& wrapper : arr) {
    if (!wrapper.is_object() || !wrapper.contains("MeasuredVariable") ||
        !wrapper["MeasuredVariable"].is_object() ||
        !wrapper["MeasuredVariable"].contains("VariableMeasured")) {
      throw malformed_entry_error(
          e.index, "expected {\"MeasuredVariable\": {\"VariableMeasured\": ...}} elements");
    }
    r.measured_variables.push_back(
        typed_term_from_json(wrapper["MeasuredVariable"]["VariableMeasured"], "VariableMeasured",
                             e.index));
  }
}

void read_dates_entry(const handle_entry& e, instrument_record& r) {
  json arr = parse_entry_json(e);
  if (!arr.is_array()) {
    throw malformed_entry_error(e.index, "Dates data must be an array");
  }
  for (const auto& wrapper : arr) {
    if (!wrapper.is_object() || !wrapper.contains("date") || !wrapper["date"].is_object()) {
      throw malformed_entry_error(e.index, "expected {\"date\": {...}} elements");
    }
    const json& inner = wrapper["date"];
    auto text = expect_entry_string(inner, "date", e.index);
    auto parsed = calendar_date::parse(text);
    if (!parsed) {
      throw malformed_entry_error(e.index, "bad date shape: " + text);
    }
    instrument_date d;
    d.date = *parsed;
    d.type = date_type(expect_entry_string(inner, "dateType", e.index));
    r.dates.push_back(std::move(d));
  }
}

void read_alternate_identifiers_entry(const handle_entry& e, instrument_record& r) {
  json arr = parse_entry_json(e);
  if (!arr.is_array()) {
    throw malformed_entry_error(e.index, "AlternateIdentifiers data must be an array");
  }
  for (const auto& wrapper : arr) {
    if (!wrapper.is_object() || !wrapper.contains("AlternateIdentifier") ||
        !wrapper["AlternateIdentifier"].is_object()) {
      throw malformed_entry_error(e.index, "expected {\"AlternateIdentifier\": {...}} elements");
    }
    const json& inner = wrapper["AlternateIdentifier"];
    alternate_identifier a;
    a.value = expect_entry_string(inner, "AlternateIdentifierValue", e.index);
    a.type = expect_entry_string(inner, "alternateIdentifierType", e.index);
    r.alternate_identifiers.push_back(std::move(a));
  }
}

void read_related_identifiers_entry(const handle_entry& e, instrument_record& r) {
  json arr = parse_entry_json(e);
  if (!arr.is_array()) {
    throw malformed_entry_error(e.index, "RelatedIdentifiers data must be an array");
  }
  for (const auto& wrapper : arr) {
    if (!wrapper.is_object() || !wrapper.contains("RelatedIdentifier") ||
        !wrapper["RelatedIdentifier"].is_object()) {
      throw malformed_entry_error(e.index, "expected {\"RelatedIdentifier\": {...}} elements");
    }
    const json& inner = wrapper["RelatedIdentifier"];
    related_identifier rel;
    rel.value = expect_entry_string(inner, "RelatedIdentifierValue", e.index);
    rel.identifier_type = expect_entry_string(inner, "RelatedIdentifierType", e.index);
    rel.relation = relation_type(expect_entry_string(inner, "relationType", e.index));
    r.related_identifiers.push_back(std::move(rel));
  }
}

}  // namespace

instrument_record from_handle_record(const handle_record& hr, const type_handle_map& types) {
  if (auto violation = hr.invariant_violation()) {
    throw malformed_entry_error(hr.entries.empty() ? 0 : hr.entries.front().index, *violation);
  }

  instrument_record r;
  std::string url_entry_data;
  bool have_landing_page = false;

  for (const auto& e : hr.entries) {
    if (e.type == "URL") {
      url_entry_data = e.data;
      continue;
    }
    if (e.type == info_type_name || e.type == info_type_landing_page) {
      continue;  // lightweight duplicates of typed entries
    }
    auto prop = types.property(e.type);
    if (!prop) {
      throw unknown_type_handle_error(e.type);
    }
    switch (*prop) {
      case schema_property::identifier: {
        json id = parse_entry_json(e);
        if (!id.is_object()) {
          throw malformed_entry_error(e.index, "Identifier data must be an object");
        }
        r.identifier = pid::infer(expect_entry_string(id, "identifierValue", e.index));
        r.identifier_type = expect_entry_string(id, "identifierType", e.index);
        break;
      }
      case schema_property::landing_page:
        r.landing_page = e.data;
        have_landing_page = true;
        break;
      case schema_property::name:
        r.name = e.data;
        break;
      case schema_property::owners:
        read_owner_entry(e, r);
        break;
      case schema_property::manufacturers:
        read_manufacturer_entry(e, r);
        break;
      case schema_property::description:
        r.description = e.data;
        break;
      case schema_property::instrument_type:
        read_instrument_type_entry(e, r);
        break;
      case schema_property::measured_variables:
        read_measured_variables_entry(e, r);
        break;
      case schema_property::dates:
        read_dates_entry(e, r);
        break;
      case schema_property::alternate_identifiers:
        read_alternate_identifiers_entry(e, r);
        break;
      case schema_property::related_identifiers:
        read_related_identifiers_entry(e, r);
        break;
    }
  }

  if (!have_landing_page) {
    r.landing_page = url_entry_data;
  }
  if (!r.identifier) {
    throw missing_mandatory_error("identifier");
  }
  if (r.landing_page.empty()) {
    throw missing_mandatory_error("landing_page");
  }
  if (r.name.empty()) {
    throw missing_mandatory_error("name");
  }
  if (r.owners.empty()) {
    throw missing_mandatory_error("owners");
  }
  if (r.manufacturers.empty()) {
    throw missing_mandatory_error("manufacturers");
  }
  return r;
}

json handle_record_to_json(const handle_record& hr) {
  json root = json::object();
  root["handle"] = hr.handle.value();
  json values = json::array();
  for (const auto& e : hr.entries) {
    json item = json::object();
    item["index"] = e.index;
    item["type"] = e.type;
    json parsed = json::parse(e.data, nullptr, false);
    if (!parsed.is_discarded() && (parsed.is_object() || parsed.is_array())) {
      item["data"] = std::move(parsed);
    } else {
      item["data"] = e.data;
    }
    values.push_back(std::move(item));
  }
  root["values"] = std::move(values);
  return root;
}

handle_record handle_record_from_json(const json& root) {
  if (!root.is_object() || !root.contains("handle") || !root.contains("values") ||
      !root["values"].is_array()) {
    throw error("handle record JSON must be {\"handle\": ..., \"values\": [...]}");
  }
  handle_record hr;
  hr.handle = pid::infer(root["handle"].get<std::string>());
  for (const auto& item : root["values"]) {
    if (!item.is_object() || !item.contains("index") || !item.contains("type") ||
        !item.contains("data")) {
      throw error("handle record entries need index, type and data");
    }
    handle_entry e;
    e.index = item["index"].get<int>();
    e.type = item["type"].get<std::string>();
    const json& data = item["data"];
    e.data = data.is_string() ? data.get<std::string>() : data.dump();
    hr.entries.push_back(std::move(e));
  }
  return hr;
}

std::string render_handle_record(const handle_record& hr) {
  return handle_record_to_json(hr).dump(2) + "\n";
}

handle_record parse_handle_record(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw error(std::string("handle record is not valid JSON: ") + e.what());
  }
  return handle_record_from_json(root);
}

}  // namespace pidinst
