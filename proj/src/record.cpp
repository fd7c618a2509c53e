#include "pidinst/record.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>

#include "pidinst/strings.hpp"

namespace pidinst {

bool calendar_date::valid() const {
  if (year < 0 || year > 9999) {
    return false;
  }
  const std::chrono::year_month_day ymd{std::chrono::year(year),
                                        std::chrono::month(static_cast<unsigned>(month)),
                                        std::chrono::day(static_cast<unsigned>(day))};
  return ymd.ok();
}

std::string calendar_date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::optional<calendar_date> calendar_date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    return std::nullopt;
  }
  for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      return std::nullopt;
    }
  }
  calendar_date d;
  d.year = (text[0] - '0') * 1000 + (text[1] - '0') * 100 + (text[2] - '0') * 10 + (text[3] - '0');
  d.month = (text[5] - '0') * 10 + (text[6] - '0');
  d.day = (text[8] - '0') * 10 + (text[9] - '0');
  return d;
}

date_type::date_type(std::string_view token) : token_(strings::trim(token)) {
  if (token_ == "Commissioned") {
    kind_ = kind::commissioned;
  } else if (token_ == "DeCommissioned") {
    kind_ = kind::decommissioned;
  } else {
    kind_ = kind::other;
  }
}

relation_type::relation_type(std::string_view token) : token_(strings::trim(token)) {
  if (token_ == "IsDescribedBy") {
    kind_ = kind::is_described_by;
  } else if (token_ == "HasMetadata") {
    kind_ = kind::has_metadata;
  } else if (token_ == "HasComponent") {
    kind_ = kind::has_component;
  } else if (token_ == "IsComponentOf") {
    kind_ = kind::is_component_of;
  } else if (token_ == "IsNewVersionOf") {
    kind_ = kind::is_new_version_of;
  } else if (token_ == "IsPreviousVersionOf") {
    kind_ = kind::is_previous_version_of;
  } else if (token_ == "WasUsedIn") {
    kind_ = kind::was_used_in;
  } else {
    kind_ = kind::other;
  }
}

relation_type relation_type::from(kind k) {
  switch (k) {
    case kind::is_described_by:
      return relation_type("IsDescribedBy");
    case kind::has_metadata:
      return relation_type("HasMetadata");
    case kind::has_component:
      return relation_type("HasComponent");
    case kind::is_component_of:
      return relation_type("IsComponentOf");
    case kind::is_new_version_of:
      return relation_type("IsNewVersionOf");
    case kind::is_previous_version_of:
      return relation_type("IsPreviousVersionOf");
    case kind::was_used_in:
      return relation_type("WasUsedIn");
    case kind::other:
      break;
  }
  return relation_type();
}

}  // namespace pidinst
