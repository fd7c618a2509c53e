#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pidinst/errors.hpp"
#include "pidinst/handle_record.hpp"
#include "pidinst/record.hpp"
#include "pidinst/store.hpp"
#include "pidinst/validate.hpp"

namespace pidinst {

class registry_error : public error {
 public:
  using error::error;
};

class not_found_error : public registry_error {
 public:
  explicit not_found_error(const std::string& pid_value)
      : registry_error("no such PID: " + pid_value) {}
};

class gone_error : public registry_error {
 public:
  explicit gone_error(const std::string& pid_value)
      : registry_error("PID is tombstoned: " + pid_value) {}
};

class version_conflict_error : public registry_error {
 public:
  version_conflict_error(int expected, int current)
      : registry_error("version conflict: expected " + std::to_string(expected) + ", current is " +
                       std::to_string(current)),
        current_(current) {}

  int current_version() const { return current_; }

 private:
  int current_;
};

class identifier_mismatch_error : public registry_error {
 public:
  using registry_error::registry_error;
};

class already_tombstoned_error : public registry_error {
 public:
  explicit already_tombstoned_error(const std::string& pid_value)
      : registry_error("PID is already tombstoned: " + pid_value) {}
};

class validation_failed_error : public registry_error {
 public:
  explicit validation_failed_error(validation_report report)
      : registry_error("record failed validation with " +
                       std::to_string(report.error_count()) + " error(s)"),
        report_(std::move(report)) {}

  const validation_report& report() const { return report_; }

 private:
  validation_report report_;
};

enum class suffix_policy { sequential, random_hex };

struct registry_config {
  std::string prefix = "21.T11998";
  suffix_policy policy = suffix_policy::random_hex;
  std::filesystem::path store_path;
  std::string base_resolver_url = std::string(default_handle_resolver);
  std::string bind_address = "127.0.0.1";
  int port = 8484;
  std::string api_token;  // write operations are open when empty
};

/// Reads a JSON config file; PIDINST_* environment variables override
/// individual fields (PIDINST_PREFIX, PIDINST_SUFFIX_POLICY,
/// PIDINST_STORE_PATH, PIDINST_BASE_RESOLVER_URL, PIDINST_BIND_ADDRESS,
/// PIDINST_PORT, PIDINST_API_TOKEN).
registry_config load_registry_config(const std::filesystem::path& file);
/// Environment-only variant for configs assembled from flags.
void apply_env_overrides(registry_config& config);

enum class resolve_mode { redirect, no_redirect };

struct resolution {
  entry_state state = entry_state::active;
  int version = 0;
  std::string landing_page;
  instrument_record record;
  /// Filled in no_redirect mode: the handle-record serialization of the
  /// resolved version.
  std::optional<handle_record> handle;
};

/// Handle-style PID registry over a durable file store. Mint assigns
/// <prefix>/<suffix> identifiers and stores version 1; updates append to
/// the version history under optimistic concurrency; tombstoned entries
/// keep their full history and still resolve to their last metadata.
///
/// Concurrency: reads never block; mutations on one PID serialize via a
/// per-suffix mutex; minting serializes only suffix allocation.
class registry {
 public:
  explicit registry(registry_config config);

  /// Record must validate clean except for the identifier, which must be
  /// absent (it is assigned here). identifier_type defaults to
  /// "MeasuringInstrument". Atomic: a crash cannot allocate a PID
  /// without its stored record.
  pid mint(instrument_record record);

  resolution resolve(const pid& id, resolve_mode mode = resolve_mode::redirect) const;
  /// Specific history version (1-based).
  resolution resolve_version(const pid& id, int version) const;

  /// Optimistic-concurrency update; returns the new version number.
  int update(const pid& id, instrument_record record, int expected_version);

  void tombstone(const pid& id);

  registry_entry entry(const pid& id) const;  // full history; throws not_found_error

  struct listing_item {
    std::string pid_value;
    int version = 0;
    entry_state state = entry_state::active;
    std::string name;
  };
  struct listing_page {
    std::vector<listing_item> items;
    std::optional<std::string> next_cursor;
  };
  /// Suffix-ordered page; cursor is the suffix to continue after.
  listing_page list(const std::optional<std::string>& cursor, size_t limit) const;

  const registry_config& config() const { return config_; }

  handle_record handle_record_for(const instrument_record& record) const;

 private:
  std::string suffix_for(const pid& id) const;  // throws not_found_error on foreign prefix
  registry_entry load_or_throw(const std::string& suffix) const;
  std::mutex& entry_mutex(const std::string& suffix);

  registry_config config_;
  mutable record_store store_;
  std::mutex mutex_map_guard_;
  std::map<std::string, std::unique_ptr<std::mutex>> entry_mutexes_;
};

std::string to_string(suffix_policy policy);
suffix_policy suffix_policy_from_string(const std::string& token);

}  // namespace pidinst
