#pragma once

#include <string>
#include <string_view>

namespace pidinst::strings {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool contains_whitespace(std::string_view s);

// Syntactic check only: <scheme>://<host>[...] with a non-empty host.
bool is_absolute_url(std::string_view s);

}  // namespace pidinst::strings
