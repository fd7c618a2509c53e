#include "pidinst/strings.hpp"

#include <algorithm>
#include <cctype>

namespace pidinst::strings {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::string trim(std::string_view s) {
  size_t begin = 0;
  size_t end = s.size();
  while (begin < end && is_space(s[begin])) {
    ++begin;
  }
  while (end > begin && is_space(s[end - 1])) {
    --end;
  }
  return std::string(s.substr(begin, end - begin));
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) {
    return false;
  }
  return std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
    return std::tolower(x) == std::tolower(y);
  });
}

bool contains_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return is_space(c); });
}

bool is_absolute_url(std::string_view s) {
  if (s.empty() || is_space(s.front()) || is_space(s.back())) {
    return false;
  }
  auto sep = s.find("://");
  if (sep == std::string_view::npos || sep == 0) {
    return false;
  }
  auto scheme = s.substr(0, sep);
  if (!std::isalpha(static_cast<unsigned char>(scheme.front()))) {
    return false;
  }
  for (char c : scheme) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') {
      return false;
    }
  }
  auto rest = s.substr(sep + 3);
  auto host_end = rest.find_first_of("/?#");
  auto host = host_end == std::string_view::npos ? rest : rest.substr(0, host_end);
  return !host.empty() && !contains_whitespace(host);
}

}  // namespace pidinst::strings
