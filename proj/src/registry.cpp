#include "pidinst/registry.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pidinst/json.hpp"
#include "pidinst/timeutil.hpp"

namespace pidinst {

std::string to_string(suffix_policy policy) {
  return policy == suffix_policy::sequential ? "sequential" : "random-hex";
}

suffix_policy suffix_policy_from_string(const std::string& token) {
  if (token == "sequential") {
    return suffix_policy::sequential;
  }
  if (token == "random-hex" || token == "random_hex") {
    return suffix_policy::random_hex;
  }
  throw error("unknown suffix policy: " + token + " (expected sequential or random-hex)");
}

void apply_env_overrides(registry_config& config) {
  if (const char* v = std::getenv("PIDINST_PREFIX")) {
    config.prefix = v;
  }
  if (const char* v = std::getenv("PIDINST_SUFFIX_POLICY")) {
    config.policy = suffix_policy_from_string(v);
  }
  if (const char* v = std::getenv("PIDINST_STORE_PATH")) {
    config.store_path = v;
  }
  if (const char* v = std::getenv("PIDINST_BASE_RESOLVER_URL")) {
    config.base_resolver_url = v;
  }
  if (const char* v = std::getenv("PIDINST_BIND_ADDRESS")) {
    config.bind_address = v;
  }
  if (const char* v = std::getenv("PIDINST_PORT")) {
    config.port = std::atoi(v);
  }
  if (const char* v = std::getenv("PIDINST_API_TOKEN")) {
    config.api_token = v;
  }
}

registry_config load_registry_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw error("cannot open config file: " + file.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  json j;
  try {
    j = json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw error("invalid config file " + file.string() + ": " + e.what());
  }
  registry_config config;
  if (j.contains("prefix")) {
    config.prefix = j["prefix"].get<std::string>();
  }
  if (j.contains("suffix_policy")) {
    config.policy = suffix_policy_from_string(j["suffix_policy"].get<std::string>());
  }
  if (j.contains("store_path")) {
    config.store_path = j["store_path"].get<std::string>();
  }
  if (j.contains("base_resolver_url")) {
    config.base_resolver_url = j["base_resolver_url"].get<std::string>();
  }
  if (j.contains("bind_address")) {
    config.bind_address = j["bind_address"].get<std::string>();
  }
  if (j.contains("port")) {
    config.port = j["port"].get<int>();
  }
  if (j.contains("api_token")) {
    config.api_token = j["api_token"].get<std::string>();
  }
  apply_env_overrides(config);
  return config;
}

registry::registry(registry_config config)
    : config_(std::move(config)), store_(config_.store_path) {
  if (config_.prefix.empty() || config_.prefix.find('/') != std::string::npos) {
    throw error("registry prefix must be non-empty and must not contain '/'");
  }
}

std::string registry::suffix_for(const pid& id) const {
  if (id.prefix() != config_.prefix || id.suffix().empty()) {
    throw not_found_error(id.value());
  }
  return id.suffix();
}

registry_entry registry::load_or_throw(const std::string& suffix) const {
  auto entry = store_.load(suffix);
  if (!entry) {
    throw not_found_error(config_.prefix + "/" + suffix);
  }
  return *entry;
}

std::mutex& registry::entry_mutex(const std::string& suffix) {
  std::lock_guard<std::mutex> guard(mutex_map_guard_);
  auto& slot = entry_mutexes_[suffix];
  if (!slot) {
    slot = std::make_unique<std::mutex>();
  }
  return *slot;
}

handle_record registry::handle_record_for(const instrument_record& record) const {
  handle_options options;
  options.resolver_base = config_.base_resolver_url;
  return to_handle_record(record, type_handle_map::defaults(), options);
}

pid registry::mint(instrument_record record) {
  if (record.identifier && !record.identifier->empty()) {
    throw identifier_mismatch_error(
        "mint assigns the identifier; the submitted record must not carry one");
  }
  validate_options options;
  options.allow_missing_identifier = true;
  auto report = validate(record, options);
  if (!report.valid()) {
    throw validation_failed_error(std::move(report));
  }

  std::string suffix = config_.policy == suffix_policy::sequential
                           ? store_.reserve_sequential_suffix()
                           : store_.reserve_random_suffix();
  pid id = pid::handle(config_.prefix + "/" + suffix);
  record.identifier = id;
  if (record.identifier_type.empty()) {
    record.identifier_type = "MeasuringInstrument";
  }

  registry_entry entry;
  entry.pid_value = id.value();
  entry.state = entry_state::active;
  entry.created_at = timeutil::now_utc_iso();
  entry.updated_at = entry.created_at;
  entry.history.push_back({1, entry.created_at, std::move(record)});
  store_.save(entry, suffix);
  store_.commit(suffix);
  return id;
}

resolution registry::resolve(const pid& id, resolve_mode mode) const {
  auto entry = load_or_throw(suffix_for(id));
  resolution res;
  res.state = entry.state;
  res.version = entry.version();
  res.record = entry.current();
  res.landing_page = res.record.landing_page;
  if (mode == resolve_mode::no_redirect) {
    res.handle = handle_record_for(res.record);
  }
  return res;
}

resolution registry::resolve_version(const pid& id, int version) const {
  auto entry = load_or_throw(suffix_for(id));
  if (version < 1 || version > entry.version()) {
    throw not_found_error(id.value() + " version " + std::to_string(version));
  }
  resolution res;
  res.state = entry.state;
  res.version = version;
  res.record = entry.history[static_cast<size_t>(version) - 1].record;
  res.landing_page = res.record.landing_page;
  res.handle = handle_record_for(res.record);
  return res;
}

int registry::update(const pid& id, instrument_record record, int expected_version) {
  std::string suffix = suffix_for(id);
  std::lock_guard<std::mutex> lock(entry_mutex(suffix));
  auto entry = load_or_throw(suffix);
  if (entry.state == entry_state::tombstoned) {
    throw gone_error(id.value());
  }
  if (!record.identifier || record.identifier->value() != id.value()) {
    throw identifier_mismatch_error("record identifier must equal " + id.value() +
                                    "; PIDs are immutable once minted");
  }
  auto report = validate(record);
  if (!report.valid()) {
    throw validation_failed_error(std::move(report));
  }
  if (expected_version != entry.version()) {
    throw version_conflict_error(expected_version, entry.version());
  }

  std::string timestamp = timeutil::now_utc_iso();
  if (timestamp <= entry.history.back().timestamp) {
    timestamp = timeutil::next_microsecond(entry.history.back().timestamp);
  }
  entry.history.push_back({entry.version() + 1, timestamp, std::move(record)});
  entry.updated_at = timestamp;
  store_.save(entry, suffix);
  return entry.version();
}

void registry::tombstone(const pid& id) {
  std::string suffix = suffix_for(id);
  std::lock_guard<std::mutex> lock(entry_mutex(suffix));
  auto entry = load_or_throw(suffix);
  if (entry.state == entry_state::tombstoned) {
    throw already_tombstoned_error(id.value());
  }
  entry.state = entry_state::tombstoned;
  std::string timestamp = timeutil::now_utc_iso();
  if (timestamp <= entry.updated_at) {
    timestamp = timeutil::next_microsecond(entry.updated_at);
  }
  entry.updated_at = timestamp;
  store_.save(entry, suffix);
}

registry_entry registry::entry(const pid& id) const { return load_or_throw(suffix_for(id)); }

registry::listing_page registry::list(const std::optional<std::string>& cursor,
                                      size_t limit) const {
  auto suffixes = store_.list_suffixes();
  listing_page page;
  for (const auto& suffix : suffixes) {
    if (cursor && suffix <= *cursor) {
      continue;
    }
    if (page.items.size() == limit) {
      page.next_cursor = page.items.back().pid_value.substr(config_.prefix.size() + 1);
      break;
    }
    auto entry = store_.load(suffix);
    if (!entry) {
      continue;  // racing delete; never happens, entries are immortal
    }
    listing_item item;
    item.pid_value = entry->pid_value;
    item.version = entry->version();
    item.state = entry->state;
    item.name = entry->current().name;
    page.items.push_back(std::move(item));
  }
  return page;
}

}  // namespace pidinst
