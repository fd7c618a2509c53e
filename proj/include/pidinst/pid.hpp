#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace pidinst {

/// Identifier schemes the toolkit knows how to classify and resolve.
enum class pid_scheme { handle, doi, url, orcid, ror, other };

inline constexpr std::string_view default_handle_resolver = "http://hdl.handle.net/";

/// A persistent identifier. Stores the bare value (e.g. "21.T11998/0000-001A-3905-F"
/// or "10.5442/NI000001"); the resolvable URL form is always derived, never stored,
/// so the resolver scheme cannot drift between copies of a record.
class pid {
 public:
  pid() = default;

  static pid handle(std::string value);
  static pid doi(std::string value);
  static pid url(std::string value);
  static pid orcid(std::string value);
  static pid ror(std::string value);
  static pid other(std::string scheme_label, std::string value);

  /// Classifies free-form identifier text. Trims whitespace and strips
  /// well-known resolver prefixes (hdl.handle.net, doi.org, orcid.org,
  /// ror.org) before matching, so the URL and bare forms of the same
  /// identifier compare equal.
  static pid infer(std::string_view text);

  pid_scheme scheme() const { return scheme_; }
  const std::string& value() const { return value_; }
  /// Scheme name carried by pid_scheme::other identifiers, empty otherwise.
  const std::string& scheme_label() const { return label_; }
  bool empty() const { return value_.empty(); }

  /// Resolvable URL form, or nullopt when the scheme has no resolver
  /// (other-scheme identifiers).
  std::optional<std::string> display_url(
      std::string_view handle_resolver = default_handle_resolver) const;

  /// Scheme-specific syntax invariants: handles have exactly one '/',
  /// DOIs match 10.<registrant>/<suffix>, no whitespace anywhere.
  bool well_formed() const;

  /// Part before the first '/' (handle and DOI schemes).
  std::string prefix() const;
  /// Part after the first '/'.
  std::string suffix() const;

  bool operator==(const pid&) const = default;

 private:
  pid(pid_scheme scheme, std::string value, std::string label = {});

  pid_scheme scheme_ = pid_scheme::other;
  std::string value_;
  std::string label_;
};

/// Trims and strips resolver-URL prefixes, returning the bare identifier
/// value. "https://hdl.handle.net/X" and "X" normalize to the same string.
std::string normalize_pid_value(std::string_view text);

}  // namespace pidinst
