#include "pidinst/datacite.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "pidinst/errors.hpp"

namespace pidinst {

namespace {

constexpr std::array<std::string_view, 34> datacite_relation_types = {
    "IsCitedBy",     "Cites",          "IsSupplementTo",      "IsSupplementedBy",
    "IsContinuedBy", "Continues",      "IsDescribedBy",       "Describes",
    "HasMetadata",   "IsMetadataFor",  "HasVersion",          "IsVersionOf",
    "IsNewVersionOf", "IsPreviousVersionOf", "IsPartOf",      "HasPart",
    "IsPublishedIn", "IsReferencedBy", "References",          "IsDocumentedBy",
    "Documents",     "IsCompiledBy",   "Compiles",            "IsVariantFormOf",
    "IsOriginalFormOf", "IsIdenticalTo", "IsReviewedBy",      "Reviews",
    "IsDerivedFrom", "IsSourceOf",     "IsRequiredBy",        "Requires",
    "IsObsoletedBy", "Obsoletes",
};

constexpr std::array<std::string_view, 15> datacite_resource_types = {
    "Audiovisual", "Collection",          "DataPaper", "Dataset",  "Event",
    "Image",       "InteractiveResource", "Model",     "PhysicalObject",
    "Service",     "Software",            "Sound",     "Text",     "Workflow",
    "Other",
};

std::string identifier_type_token(const pid& p) {
  switch (p.scheme()) {
    case pid_scheme::doi:
      return "DOI";
    case pid_scheme::handle:
      return "Handle";
    case pid_scheme::url:
      return "URL";
    case pid_scheme::orcid:
      return "ORCID";
    case pid_scheme::ror:
      return "ROR";
    case pid_scheme::other:
      return p.scheme_label().empty() ? "Other" : p.scheme_label();
  }
  return "Other";
}

void xml_escape_into(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  xml_escape_into(out, text);
  return out;
}

void check_shape(const datacite_record& dc) {
  if (!datacite_resource_type_allowed(dc.resource_type.general)) {
    throw error("resourceTypeGeneral \"" + dc.resource_type.general +
                "\" is not in the DataCite 4.3 controlled list");
  }
  for (const auto& rel : dc.related_identifiers) {
    if (!datacite_relation_allowed(rel.relation_type)) {
      throw error("relationType \"" + rel.relation_type +
                  "\" is not in the DataCite 4.3 controlled list");
    }
  }
  if (dc.publication_year < 1000 || dc.publication_year > 9999) {
    throw error("publicationYear must be a 4-digit year, got " +
                std::to_string(dc.publication_year));
  }
}

}  // namespace

bool datacite_relation_allowed(std::string_view token) {
  return std::find(datacite_relation_types.begin(), datacite_relation_types.end(), token) !=
         datacite_relation_types.end();
}

bool datacite_resource_type_allowed(std::string_view token) {
  return std::find(datacite_resource_types.begin(), datacite_resource_types.end(), token) !=
         datacite_resource_types.end();
}

std::optional<std::string> datacite_relation_for(const relation_type& relation) {
  switch (relation.which()) {
    case relation_type::kind::is_described_by:
      return "IsDescribedBy";
    case relation_type::kind::has_metadata:
      return "HasMetadata";
    case relation_type::kind::has_component:
      return "HasPart";
    case relation_type::kind::is_component_of:
      return "IsPartOf";
    case relation_type::kind::is_new_version_of:
      return "IsNewVersionOf";
    case relation_type::kind::is_previous_version_of:
      return "IsPreviousVersionOf";
    case relation_type::kind::was_used_in:
      return std::nullopt;  // proposed for DataCite, not yet in 4.3
    case relation_type::kind::other:
      if (datacite_relation_allowed(relation.token())) {
        return relation.token();
      }
      return std::nullopt;
  }
  return std::nullopt;
}

datacite_conversion to_datacite(const instrument_record& r, const datacite_options& options) {
  if (!r.identifier || r.identifier->empty()) {
    throw missing_mandatory_error("identifier");
  }

  datacite_conversion out;
  datacite_record& dc = out.record;

  dc.doi = *r.identifier;
  dc.url = r.landing_page;
  dc.publisher = options.publisher;
  dc.publication_year = options.publication_year;
  dc.resource_type = {"Other", "Instrument"};

  dc.titles.push_back({r.name, {}});
  for (const auto& m : r.manufacturers) {
    if (!m.model_name.empty()) {
      // DataCite has no model-name property; a typed title keeps it
      // recoverable.
      dc.titles.push_back({"Model: " + m.model_name, "Other"});
    }
  }

  auto owner_names = [&] {
    std::vector<datacite_name> names;
    for (const auto& o : r.owners) {
      names.push_back({o.owner_name, o.owner_identifier, o.owner_identifier_type});
    }
    return names;
  };
  auto manufacturer_names = [&] {
    std::vector<datacite_name> names;
    for (const auto& m : r.manufacturers) {
      names.push_back({m.manufacturer_name, m.manufacturer_identifier,
                       m.manufacturer_identifier_type});
    }
    return names;
  };

  if (options.policy == creator_policy::owner_as_creator) {
    dc.creators = owner_names();
  } else {
    dc.creators = manufacturer_names();
  }
  for (const auto& o : r.owners) {
    dc.contributors.push_back({o.owner_name, "HostingInstitution"});
  }

  for (const auto& d : r.dates) {
    dc.dates.push_back({d.date.to_string(), d.type.token()});
  }
  for (const auto& a : r.alternate_identifiers) {
    dc.alternate_identifiers.push_back({a.value, a.type});
  }
  for (const auto& rel : r.related_identifiers) {
    auto mapped = datacite_relation_for(rel.relation);
    if (!mapped) {
      out.warnings.push_back("related identifier \"" + rel.value + "\": relation type \"" +
                             rel.relation.token() +
                             "\" has no DataCite 4.3 equivalent and was dropped");
      continue;
    }
    if (*mapped != rel.relation.token()) {
      out.warnings.push_back("related identifier \"" + rel.value + "\": relation type \"" +
                             rel.relation.token() + "\" mapped to \"" + *mapped + "\"");
    }
    dc.related_identifiers.push_back({rel.value, rel.identifier_type, *mapped});
  }
  if (!r.description.empty()) {
    dc.descriptions.push_back({r.description, "Abstract"});
  }
  for (const auto& t : r.instrument_types) {
    dc.subjects.push_back({t.value, t.scheme_hint});
  }
  for (const auto& v : r.measured_variables) {
    dc.subjects.push_back({v.value, v.scheme_hint});
  }
  return out;
}

namespace {

std::string render_json(const datacite_record& dc) {
  json j = json::object();
  if (dc.doi.scheme() == pid_scheme::doi) {
    j["doi"] = dc.doi.value();
  }
  {
    json ids = json::array();
    json id = json::object();
    id["identifier"] = dc.doi.value();
    id["identifierType"] = identifier_type_token(dc.doi);
    ids.push_back(std::move(id));
    j["identifiers"] = std::move(ids);
  }
  if (!dc.url.empty()) {
    j["url"] = dc.url;
  }
  {
    json creators = json::array();
    for (const auto& c : dc.creators) {
      json item = json::object();
      item["name"] = c.name;
      if (!c.identifier.empty()) {
        item["nameIdentifier"] = c.identifier;
        item["nameIdentifierScheme"] = c.identifier_scheme;
      }
      creators.push_back(std::move(item));
    }
    j["creators"] = std::move(creators);
  }
  {
    json titles = json::array();
    for (const auto& t : dc.titles) {
      json item = json::object();
      item["title"] = t.title;
      if (!t.title_type.empty()) {
        item["titleType"] = t.title_type;
      }
      titles.push_back(std::move(item));
    }
    j["titles"] = std::move(titles);
  }
  j["publisher"] = dc.publisher;
  j["publicationYear"] = dc.publication_year;
  {
    json types = json::object();
    types["resourceTypeGeneral"] = dc.resource_type.general;
    types["resourceType"] = dc.resource_type.specific;
    j["types"] = std::move(types);
  }
  if (!dc.contributors.empty()) {
    json arr = json::array();
    for (const auto& c : dc.contributors) {
      json item = json::object();
      item["name"] = c.name;
      item["contributorType"] = c.contributor_type;
      arr.push_back(std::move(item));
    }
    j["contributors"] = std::move(arr);
  }
  if (!dc.dates.empty()) {
    json arr = json::array();
    for (const auto& d : dc.dates) {
      json item = json::object();
      item["date"] = d.date;
      item["dateType"] = d.date_type;
      arr.push_back(std::move(item));
    }
    j["dates"] = std::move(arr);
  }
  if (!dc.alternate_identifiers.empty()) {
    json arr = json::array();
    for (const auto& a : dc.alternate_identifiers) {
      json item = json::object();
      item["alternateIdentifier"] = a.value;
      item["alternateIdentifierType"] = a.type;
      arr.push_back(std::move(item));
    }
    j["alternateIdentifiers"] = std::move(arr);
  }
  if (!dc.related_identifiers.empty()) {
    json arr = json::array();
    for (const auto& rel : dc.related_identifiers) {
      json item = json::object();
      item["relationType"] = rel.relation_type;
      item["relatedIdentifier"] = rel.value;
      item["relatedIdentifierType"] = rel.identifier_type;
      arr.push_back(std::move(item));
    }
    j["relatedIdentifiers"] = std::move(arr);
  }
  if (!dc.descriptions.empty()) {
    json arr = json::array();
    for (const auto& d : dc.descriptions) {
      json item = json::object();
      item["description"] = d.text;
      item["descriptionType"] = d.description_type;
      arr.push_back(std::move(item));
    }
    j["descriptions"] = std::move(arr);
  }
  if (!dc.subjects.empty()) {
    json arr = json::array();
    for (const auto& s : dc.subjects) {
      json item = json::object();
      item["subject"] = s.subject;
      if (!s.scheme.empty()) {
        item["subjectScheme"] = s.scheme;
      }
      arr.push_back(std::move(item));
    }
    j["subjects"] = std::move(arr);
  }
  return j.dump() + "\n";
}

std::string render_xml(const datacite_record& dc) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<resource xmlns=\"http://datacite.org/schema/kernel-4\" "
         "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
         "xsi:schemaLocation=\"http://datacite.org/schema/kernel-4 "
         "http://schema.datacite.org/meta/kernel-4.3/metadata.xsd\">\n";
  out << "  <identifier identifierType=\"" << xml_escape(identifier_type_token(dc.doi)) << "\">"
      << xml_escape(dc.doi.value()) << "</identifier>\n";
  out << "  <creators>\n";
  for (const auto& c : dc.creators) {
    out << "    <creator>\n";
    out << "      <creatorName>" << xml_escape(c.name) << "</creatorName>\n";
    if (!c.identifier.empty()) {
      out << "      <nameIdentifier nameIdentifierScheme=\"" << xml_escape(c.identifier_scheme)
          << "\">" << xml_escape(c.identifier) << "</nameIdentifier>\n";
    }
    out << "    </creator>\n";
  }
  out << "  </creators>\n";
  out << "  <titles>\n";
  for (const auto& t : dc.titles) {
    if (t.title_type.empty()) {
      out << "    <title>" << xml_escape(t.title) << "</title>\n";
    } else {
      out << "    <title titleType=\"" << xml_escape(t.title_type) << "\">"
          << xml_escape(t.title) << "</title>\n";
    }
  }
  out << "  </titles>\n";
  out << "  <publisher>" << xml_escape(dc.publisher) << "</publisher>\n";
  out << "  <publicationYear>" << dc.publication_year << "</publicationYear>\n";
  out << "  <resourceType resourceTypeGeneral=\"" << xml_escape(dc.resource_type.general)
      << "\">" << xml_escape(dc.resource_type.specific) << "</resourceType>\n";
  if (!dc.subjects.empty()) {
    out << "  <subjects>\n";
    for (const auto& s : dc.subjects) {
      if (s.scheme.empty()) {
        out << "    <subject>" << xml_escape(s.subject) << "</subject>\n";
      } else {
        out << "    <subject subjectScheme=\"" << xml_escape(s.scheme) << "\">"
            << xml_escape(s.subject) << "</subject>\n";
      }
    }
    out << "  </subjects>\n";
  }
  if (!dc.contributors.empty()) {
    out << "  <contributors>\n";
    for (const auto& c : dc.contributors) {
      out << "    <contributor contributorType=\"" << xml_escape(c.contributor_type) << "\">\n";
      out << "      <contributorName>" << xml_escape(c.name) << "</contributorName>\n";
      out << "    </contributor>\n";
    }
    out << "  </contributors>\n";
  }
  if (!dc.dates.empty()) {
    out << "  <dates>\n";
    for (const auto& d : dc.dates) {
      out << "    <date dateType=\"" << xml_escape(d.date_type) << "\">" << xml_escape(d.date)
          << "</date>\n";
    }
    out << "  </dates>\n";
  }
  if (!dc.alternate_identifiers.empty()) {
    out << "  <alternateIdentifiers>\n";
    for (const auto& a : dc.alternate_identifiers) {
      out << "    <alternateIdentifier alternateIdentifierType=\"" << xml_escape(a.type) << "\">"
          << xml_escape(a.value) << "</alternateIdentifier>\n";
    }
    out << "  </alternateIdentifiers>\n";
  }
  if (!dc.related_identifiers.empty()) {
    out << "  <relatedIdentifiers>\n";
    for (const auto& rel : dc.related_identifiers) {
      out << "    <relatedIdentifier relatedIdentifierType=\"" << xml_escape(rel.identifier_type)
          << "\" relationType=\"" << xml_escape(rel.relation_type) << "\">"
          << xml_escape(rel.value) << "</relatedIdentifier>\n";
    }
    out << "  </relatedIdentifiers>\n";
  }
  if (!dc.descriptions.empty()) {
    out << "  <descriptions>\n";
    for (const auto& d : dc.descriptions) {
      out << "    <description descriptionType=\"" << xml_escape(d.description_type) << "\">"
          << xml_escape(d.text) << "</description>\n";
    }
    out << "  </descriptions>\n";
  }
  out << "</resource>\n";
  return out.str();
}

}  // namespace

std::string render_datacite(const datacite_record& dc, datacite_format format) {
  check_shape(dc);
  return format == datacite_format::json ? render_json(dc) : render_xml(dc);
}

}  // namespace pidinst
