#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pidinst/record.hpp"

namespace pidinst {

enum class entry_state { active, tombstoned };

struct stored_version {
  int version = 0;
  std::string timestamp;  // UTC ISO-8601, strictly increasing per entry
  instrument_record record;
};

/// One registry entry: current state plus the full version history.
/// version == history.size(); history versions run contiguously from 1.
struct registry_entry {
  std::string pid_value;
  entry_state state = entry_state::active;
  std::string created_at;
  std::string updated_at;
  std::vector<stored_version> history;

  int version() const { return static_cast<int>(history.size()); }
  const instrument_record& current() const { return history.back().record; }
};

class store_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Durable one-file-per-PID store under a two-level directory fan-out.
/// Writes go through a temp file and rename, so readers observe either
/// the previous or the next version, never a torn file. Minting, which
/// must never allocate a PID without a stored record, reserves the
/// suffix with an intent file first; leftover intents from a crashed
/// process are rolled back on open.
class record_store {
 public:
  explicit record_store(std::filesystem::path root);

  std::optional<registry_entry> load(const std::string& suffix) const;
  void save(const registry_entry& entry, const std::string& suffix);
  bool exists(const std::string& suffix) const;
  std::vector<std::string> list_suffixes() const;  // sorted

  /// Reserves a fresh random suffix (4 groups of 4 uppercase hex chars)
  /// via an exclusive intent file. Call commit() after the entry is saved.
  std::string reserve_random_suffix();

  /// Reserves the next counter value (12 zero-padded digits in 3 groups);
  /// the counter advances durably before the suffix is handed out.
  std::string reserve_sequential_suffix();

  void commit(const std::string& suffix);

  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path entry_path(const std::string& suffix) const;
  std::filesystem::path intent_path(const std::string& suffix) const;
  void recover_intents();
  void create_intent(const std::string& suffix);

  std::filesystem::path root_;
  std::mutex alloc_mutex_;
  std::mt19937_64 rng_;
};

/// Writes content to path atomically: temp file in the same directory,
/// fsync, rename over the target, fsync the directory.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace pidinst
