#include "pidinst/pid.hpp"

#include <array>
#include <cctype>

#include "pidinst/strings.hpp"

namespace pidinst {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

bool looks_like_doi(std::string_view s) {
  if (s.substr(0, 3) != "10.") {
    return false;
  }
  auto slash = s.find('/');
  if (slash == std::string_view::npos || slash < 4 || slash + 1 >= s.size()) {
    return false;
  }
  return !strings::contains_whitespace(s);
}

bool looks_like_handle(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos || slash == 0 || slash + 1 >= s.size()) {
    return false;
  }
  if (s.find('/', slash + 1) != std::string_view::npos) {
    return false;
  }
  return !strings::contains_whitespace(s);
}

// 0000-0002-1825-0097 style, final character may be X.
bool looks_like_orcid(std::string_view s) {
  if (s.size() != 19) {
    return false;
  }
  for (size_t i = 0; i < s.size(); ++i) {
    if (i == 4 || i == 9 || i == 14) {
      if (s[i] != '-') {
        return false;
      }
    } else if (i == 18) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])) && s[i] != 'X') {
        return false;
      }
    } else if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      return false;
    }
  }
  return true;
}

// ROR identifiers are 9 characters starting with 0 (e.g. 05xpvk416).
bool looks_like_ror(std::string_view s) {
  if (s.size() != 9 || s.front() != '0') {
    return false;
  }
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)) &&
        !std::islower(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

struct resolver_prefix {
  std::string_view prefix;
  // Hint for classification of the stripped remainder.
  pid_scheme scheme;
};

constexpr std::array<resolver_prefix, 10> resolver_prefixes = {{
    {"http://hdl.handle.net/", pid_scheme::handle},
    {"https://hdl.handle.net/", pid_scheme::handle},
    {"http://doi.org/", pid_scheme::doi},
    {"https://doi.org/", pid_scheme::doi},
    {"http://dx.doi.org/", pid_scheme::doi},
    {"https://dx.doi.org/", pid_scheme::doi},
    {"http://orcid.org/", pid_scheme::orcid},
    {"https://orcid.org/", pid_scheme::orcid},
    {"http://ror.org/", pid_scheme::ror},
    {"https://ror.org/", pid_scheme::ror},
}};

}  // namespace

pid::pid(pid_scheme scheme, std::string value, std::string label)
    : scheme_(scheme), value_(std::move(value)), label_(std::move(label)) {}

pid pid::handle(std::string value) { return pid(pid_scheme::handle, std::move(value)); }
pid pid::doi(std::string value) { return pid(pid_scheme::doi, std::move(value)); }
pid pid::url(std::string value) { return pid(pid_scheme::url, std::move(value)); }
pid pid::orcid(std::string value) { return pid(pid_scheme::orcid, std::move(value)); }
pid pid::ror(std::string value) { return pid(pid_scheme::ror, std::move(value)); }

pid pid::other(std::string scheme_label, std::string value) {
  return pid(pid_scheme::other, std::move(value), std::move(scheme_label));
}

pid pid::infer(std::string_view text) {
  std::string trimmed = strings::trim(text);
  for (const auto& rp : resolver_prefixes) {
    if (trimmed.size() > rp.prefix.size() &&
        strings::iequals(std::string_view(trimmed).substr(0, rp.prefix.size()), rp.prefix)) {
      std::string bare = strings::trim(std::string_view(trimmed).substr(rp.prefix.size()));
      // hdl.handle.net also resolves DOIs; prefer the more specific class.
      if (looks_like_doi(bare)) {
        return doi(std::move(bare));
      }
      switch (rp.scheme) {
        case pid_scheme::handle:
          return handle(std::move(bare));
        case pid_scheme::orcid:
          return orcid(std::move(bare));
        case pid_scheme::ror:
          return ror(std::move(bare));
        default:
          return doi(std::move(bare));
      }
    }
  }
  if (strings::is_absolute_url(trimmed)) {
    return url(std::move(trimmed));
  }
  if (looks_like_doi(trimmed)) {
    return doi(std::move(trimmed));
  }
  if (looks_like_orcid(trimmed)) {
    return orcid(std::move(trimmed));
  }
  if (looks_like_ror(trimmed)) {
    return ror(std::move(trimmed));
  }
  if (looks_like_handle(trimmed)) {
    return handle(std::move(trimmed));
  }
  return other("", std::move(trimmed));
}

std::optional<std::string> pid::display_url(std::string_view handle_resolver) const {
  switch (scheme_) {
    case pid_scheme::handle:
      return std::string(handle_resolver) + value_;
    case pid_scheme::doi:
      return "https://doi.org/" + value_;
    case pid_scheme::url:
      return value_;
    case pid_scheme::orcid:
      return "https://orcid.org/" + value_;
    case pid_scheme::ror:
      return "https://ror.org/" + value_;
    case pid_scheme::other:
      return std::nullopt;
  }
  return std::nullopt;
}

bool pid::well_formed() const {
  if (value_.empty() || strings::contains_whitespace(value_)) {
    return false;
  }
  switch (scheme_) {
    case pid_scheme::handle:
      return looks_like_handle(value_);
    case pid_scheme::doi:
      return looks_like_doi(value_);
    case pid_scheme::url:
      return strings::is_absolute_url(value_);
    case pid_scheme::orcid:
      return looks_like_orcid(value_);
    case pid_scheme::ror:
      return looks_like_ror(value_);
    case pid_scheme::other:
      return true;
  }
  return false;
}

std::string pid::prefix() const {
  auto slash = value_.find('/');
  return slash == std::string::npos ? std::string() : value_.substr(0, slash);
}

std::string pid::suffix() const {
  auto slash = value_.find('/');
  return slash == std::string::npos ? value_ : value_.substr(slash + 1);
}

std::string normalize_pid_value(std::string_view text) {
  std::string trimmed = strings::trim(text);
  for (const auto& rp : resolver_prefixes) {
    if (trimmed.size() > rp.prefix.size() &&
        strings::iequals(std::string_view(trimmed).substr(0, rp.prefix.size()), rp.prefix)) {
      return strings::trim(std::string_view(trimmed).substr(rp.prefix.size()));
    }
  }
  return trimmed;
}

}  // namespace pidinst
