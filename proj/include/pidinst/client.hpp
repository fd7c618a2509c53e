#pragma once

#include <optional>
#include <string>

#include "pidinst/errors.hpp"

namespace pidinst {

/// Connection-level failure (target unreachable, timeout), as opposed to
/// an error answer from the registry.
class transport_error : public error {
 public:
  using error::error;
};

/// Thin HTTP client for the registry API, used by the command-line
/// front end. Throws transport_error when the registry cannot be
/// reached and error for non-success statuses, carrying the server's
/// error message when one is present.
class registry_client {
 public:
  explicit registry_client(std::string base_url, std::string api_token = {});

  /// POST the canonical record text; returns the minted PID value.
  std::string mint(const std::string& canonical_record);

  struct resolution_result {
    int status = 0;
    std::string landing_page;  // redirect target (redirect mode)
    std::string body;          // handle-record JSON (noredirect and 410 answers)
  };
  /// GET /{pid}; does not follow the redirect.
  resolution_result resolve(const std::string& pid_value, bool noredirect);

  void tombstone(const std::string& pid_value);

  /// GET the canonical record body from the API endpoint.
  std::string fetch_record(const std::string& pid_value, std::optional<int> version = {});

 private:
  std::string base_url_;
  std::string api_token_;
};

/// Liveness probe: HTTP status of GET url, or nullopt when unreachable.
std::optional<int> probe_url(const std::string& url);

}  // namespace pidinst
