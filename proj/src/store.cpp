#include "pidinst/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pidinst/canonical.hpp"
#include "pidinst/json.hpp"

namespace pidinst {

namespace {

json entry_to_json(const registry_entry& e) {
  json j = json::object();
  j["pid"] = e.pid_value;
  j["state"] = e.state == entry_state::active ? "active" : "tombstoned";
  j["created_at"] = e.created_at;
  j["updated_at"] = e.updated_at;
  json history = json::array();
  for (const auto& v : e.history) {
    json item = json::object();
    item["version"] = v.version;
    item["timestamp"] = v.timestamp;
    item["record"] = record_to_json(v.record);
    history.push_back(std::move(item));
  }
  j["history"] = std::move(history);
  return j;
}

registry_entry entry_from_json(const json& j, const std::filesystem::path& path) {
  try {
    registry_entry e;
    e.pid_value = j.at("pid").get<std::string>();
    e.state = j.at("state").get<std::string>() == "tombstoned" ? entry_state::tombstoned
                                                               : entry_state::active;
    e.created_at = j.at("created_at").get<std::string>();
    e.updated_at = j.at("updated_at").get<std::string>();
    for (const auto& item : j.at("history")) {
      stored_version v;
      v.version = item.at("version").get<int>();
      v.timestamp = item.at("timestamp").get<std::string>();
      v.record = record_from_json(item.at("record"));
      e.history.push_back(std::move(v));
    }
    if (e.history.empty()) {
      throw store_error("entry has no versions: " + path.string());
    }
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw store_error("corrupt entry file " + path.string() + ": " + ex.what());
  }
}

int fsync_path(const std::filesystem::path& p, int flags) {
  int fd = ::open(p.c_str(), flags);
  if (fd < 0) {
    return -1;
  }
  int rc = ::fsync(fd);
  ::close(fd);
  return rc;
}

}  // namespace

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw store_error("cannot write " + tmp.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw store_error("short write to " + tmp.string());
    }
  }
  if (fsync_path(tmp, O_RDONLY) != 0) {
    throw store_error("fsync failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw store_error("rename failed for " + path.string() + ": " + ec.message());
  }
  fsync_path(path.parent_path(), O_RDONLY | O_DIRECTORY);
}

record_store::record_store(std::filesystem::path root)
    : root_(std::move(root)), rng_(std::random_device{}()) {
  std::error_code ec;
  std::filesystem::create_directories(root_ / "entries", ec);
  std::filesystem::create_directories(root_ / "intents", ec);
  std::filesystem::create_directories(root_ / "allocator", ec);
  if (ec) {
    throw store_error("cannot create store directories under " + root_.string());
  }
  recover_intents();
}

std::filesystem::path record_store::entry_path(const std::string& suffix) const {
  // Two-level fan-out from the leading suffix characters.
  std::string flat;
  for (char c : suffix) {
    if (c != '-') {
      flat += c;
    }
  }
  std::string l1 = flat.size() >= 2 ? flat.substr(0, 2) : std::string("__");
  std::string l2 = flat.size() >= 4 ? flat.substr(2, 2) : std::string("__");
  return root_ / "entries" / l1 / l2 / (suffix + ".json");
}

std::filesystem::path record_store::intent_path(const std::string& suffix) const {
  return root_ / "intents" / (suffix + ".intent");
}

void record_store::recover_intents() {
  // A leftover intent is a mint interrupted either before the entry file
  // was written (the PID never became visible; dropping the intent rolls
  // the allocation back) or just after (the intent is stale). Removing
  // it is correct in both cases.
  for (const auto& item : std::filesystem::directory_iterator(root_ / "intents")) {
    if (!item.is_regular_file() || item.path().extension() != ".intent") {
      continue;
    }
    std::error_code ec;
    std::filesystem::remove(item.path(), ec);
  }
}

std::optional<registry_entry> record_store::load(const std::string& suffix) const {
  auto path = entry_path(suffix);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  json j;
  try {
    j = json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw store_error("corrupt entry file " + path.string() + ": " + e.what());
  }
  return entry_from_json(j, path);
}

void record_store::save(const registry_entry& entry, const std::string& suffix) {
  auto path = entry_path(suffix);
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) {
    throw store_error("cannot create " + path.parent_path().string());
  }
  atomic_write_file(path, entry_to_json(entry).dump(2) + "\n");
}

bool record_store::exists(const std::string& suffix) const {
  return std::filesystem::exists(entry_path(suffix));
}

std::vector<std::string> record_store::list_suffixes() const {
  std::vector<std::string> out;
  auto entries_dir = root_ / "entries";
  if (!std::filesystem::exists(entries_dir)) {
    return out;
  }
  for (const auto& item : std::filesystem::recursive_directory_iterator(entries_dir)) {
    if (item.is_regular_file() && item.path().extension() == ".json") {
      out.push_back(item.path().stem().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void record_store::create_intent(const std::string& suffix) {
  auto path = intent_path(suffix);
  int fd = ::open(path.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    throw store_error("suffix already reserved: " + suffix);
  }
  ::fsync(fd);
  ::close(fd);
  fsync_path(path.parent_path(), O_RDONLY | O_DIRECTORY);
}

std::string record_store::reserve_random_suffix() {
  std::lock_guard<std::mutex> lock(alloc_mutex_);
  static const char hex[] = "0123456789ABCDEF";
  for (int attempt = 0; attempt < 64; ++attempt) {
    uint64_t bits = rng_();
    std::string suffix;
    suffix.reserve(19);
    for (int i = 0; i < 16; ++i) {
      if (i > 0 && i % 4 == 0) {
        suffix += '-';
      }
      suffix += hex[(bits >> (i * 4)) & 0xF];
    }
    if (exists(suffix) || std::filesystem::exists(intent_path(suffix))) {
      continue;
    }
    create_intent(suffix);
    return suffix;
  }
  throw store_error("could not find a free random suffix");
}

std::string record_store::reserve_sequential_suffix() {
  std::lock_guard<std::mutex> lock(alloc_mutex_);
  auto counter_path = root_ / "allocator" / "next";
  uint64_t next = 1;
  {
    std::ifstream in(counter_path);
    if (in) {
      in >> next;
      if (!in) {
        throw store_error("corrupt allocation counter: " + counter_path.string());
      }
    }
  }
  // Advance the counter durably before handing the value out; a crash
  // here burns a number, which is harmless.
  atomic_write_file(counter_path, std::to_string(next + 1) + "\n");
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%012llu", static_cast<unsigned long long>(next));
  std::string digits(buf);
  std::string suffix =
      digits.substr(0, 4) + "-" + digits.substr(4, 4) + "-" + digits.substr(8, 4);
  create_intent(suffix);
  return suffix;
}

void record_store::commit(const std::string& suffix) {
  std::error_code ec;
  std::filesystem::remove(intent_path(suffix), ec);
}

}  // namespace pidinst
