#include "pidinst/server.hpp"

#include <httplib.h>

#include "pidinst/canonical.hpp"
#include "pidinst/json.hpp"
#include "pidinst/strings.hpp"

namespace pidinst {

namespace {

constexpr const char* json_type = "application/json";

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", json_type);
}

void send_error(httplib::Response& res, int status, const std::string& code,
                const std::string& message, const json* extra = nullptr) {
  json body = json::object();
  body["error"] = json::object();
  body["error"]["code"] = code;
  body["error"]["message"] = message;
  if (extra != nullptr) {
    body["error"]["report"] = *extra;
  }
  send_json(res, status, body);
}

// Runs a handler and maps registry exceptions onto HTTP statuses.
template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const not_found_error& e) {
    send_error(res, 404, "NotFound", e.what());
  } catch (const gone_error& e) {
    send_error(res, 410, "Gone", e.what());
  } catch (const already_tombstoned_error& e) {
    send_error(res, 410, "AlreadyTombstoned", e.what());
  } catch (const version_conflict_error& e) {
    send_error(res, 409, "VersionConflict", e.what());
  } catch (const identifier_mismatch_error& e) {
    send_error(res, 400, "IdentifierMismatch", e.what());
  } catch (const validation_failed_error& e) {
    json report = e.report().to_json();
    send_error(res, 422, "ValidationFailed", e.what(), &report);
  } catch (const syntax_error& e) {
    send_error(res, 400, "SyntaxError", e.what());
  } catch (const unknown_property_error& e) {
    send_error(res, 400, "UnknownProperty", e.what());
  } catch (const type_mismatch_error& e) {
    send_error(res, 400, "TypeMismatch", e.what());
  } catch (const store_error& e) {
    send_error(res, 503, "StoreUnavailable", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "Internal", e.what());
  }
}

std::string etag_for(int version) { return "\"" + std::to_string(version) + "\""; }

// Accepts "3", "\"3\"" and W/"3".
std::optional<int> parse_if_match(const std::string& raw) {
  std::string value = strings::trim(raw);
  if (value.size() >= 2 && (value[0] == 'W' || value[0] == 'w') && value[1] == '/') {
    value = strings::trim(value.substr(2));
  }
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
    value = value.substr(1, value.size() - 2);
  }
  if (value.empty()) {
    return std::nullopt;
  }
  for (char c : value) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return std::nullopt;
    }
  }
  return std::stoi(value);
}

}  // namespace

struct registry_server::impl {
  httplib::Server server;
};

registry_server::registry_server(registry& reg) : registry_(reg), impl_(new impl) {
  setup_routes();
}

registry_server::~registry_server() {
  stop();
  wait();
}

void registry_server::setup_routes() {
  auto& srv = impl_->server;
  auto& reg = registry_;

  auto authorized = [this](const httplib::Request& req, httplib::Response& res) {
    const std::string& token = registry_.config().api_token;
    if (token.empty()) {
      return true;
    }
    if (req.get_header_value("Authorization") == "Bearer " + token) {
      return true;
    }
    send_error(res, 401, "Unauthorized", "write operations require the API token");
    return false;
  };

  srv.Post("/api/v1/instruments", [&reg, authorized](const httplib::Request& req,
                                                     httplib::Response& res) {
    if (!authorized(req, res)) {
      return;
    }
    guarded(res, [&] {
      instrument_record record = parse_record(req.body);
      pid id = reg.mint(std::move(record));
      json body = json::object();
      body["pid"] = id.value();
      send_json(res, 201, body);
      res.set_header("Location", "/" + id.value());
    });
  });

  srv.Get("/api/v1/instruments", [&reg](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      std::optional<std::string> cursor;
      if (req.has_param("cursor")) {
        cursor = req.get_param_value("cursor");
      }
      size_t limit = 100;
      if (req.has_param("limit")) {
        limit = std::min<size_t>(1000, std::stoul(req.get_param_value("limit")));
      }
      auto page = reg.list(cursor, limit);
      json body = json::object();
      json items = json::array();
      for (const auto& item : page.items) {
        json j = json::object();
        j["pid"] = item.pid_value;
        j["version"] = item.version;
        j["state"] = item.state == entry_state::active ? "active" : "tombstoned";
        j["name"] = item.name;
        items.push_back(std::move(j));
      }
      body["items"] = std::move(items);
      body["next_cursor"] = page.next_cursor ? json(*page.next_cursor) : json(nullptr);
      send_json(res, 200, body);
    });
  });

  static const std::string api_entry_pattern = R"(/api/v1/instruments/([^/]+)/([^/]+))";

  srv.Get(api_entry_pattern, [&reg](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      pid id = pid::handle(req.matches[1].str() + "/" + req.matches[2].str());
      resolution r = req.has_param("version")
                         ? reg.resolve_version(id, std::stoi(req.get_param_value("version")))
                         : reg.resolve(id, resolve_mode::redirect);
      res.set_header("ETag", etag_for(r.version));
      int status = r.state == entry_state::tombstoned ? 410 : 200;
      res.status = status;
      res.set_content(canonicalize(r.record), json_type);
    });
  });

  srv.Put(api_entry_pattern, [&reg, authorized](const httplib::Request& req,
                                                httplib::Response& res) {
    if (!authorized(req, res)) {
      return;
    }
    guarded(res, [&] {
      if (!req.has_header("If-Match")) {
        send_error(res, 428, "PreconditionRequired",
                   "send If-Match: \"<version>\" with the version the update is based on");
        return;
      }
      auto expected = parse_if_match(req.get_header_value("If-Match"));
      if (!expected) {
        send_error(res, 400, "BadIfMatch", "If-Match must carry a numeric version");
        return;
      }
      pid id = pid::handle(req.matches[1].str() + "/" + req.matches[2].str());
      instrument_record record = parse_record(req.body);
      int version = reg.update(id, std::move(record), *expected);
      json body = json::object();
      body["pid"] = id.value();
      body["version"] = version;
      res.set_header("ETag", etag_for(version));
      send_json(res, 200, body);
    });
  });

  srv.Delete(api_entry_pattern, [&reg, authorized](const httplib::Request& req,
                                                   httplib::Response& res) {
    if (!authorized(req, res)) {
      return;
    }
    guarded(res, [&] {
      pid id = pid::handle(req.matches[1].str() + "/" + req.matches[2].str());
      reg.tombstone(id);
      res.status = 204;
    });
  });

  // Resolution endpoint, mirroring handle-resolver behavior: redirect to
  // the landing page, or return the handle record under ?noredirect.
  srv.Get(R"(/([^/]+)/([^/]+))", [&reg](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      pid id = pid::handle(req.matches[1].str() + "/" + req.matches[2].str());
      bool noredirect = req.has_param("noredirect");
      resolution r = reg.resolve(id, noredirect ? resolve_mode::no_redirect
                                                : resolve_mode::redirect);
      if (r.state == entry_state::tombstoned) {
        handle_record hr = r.handle ? *r.handle : reg.handle_record_for(r.record);
        res.status = 410;
        res.set_content(handle_record_to_json(hr).dump(2) + "\n", json_type);
        return;
      }
      if (noredirect) {
        res.status = 200;
        res.set_content(handle_record_to_json(*r.handle).dump(2) + "\n", json_type);
        return;
      }
      res.set_redirect(r.landing_page, 302);
    });
  });
}

int registry_server::start(const std::string& host, int port) {
  auto& srv = impl_->server;
  if (port == 0) {
    port_ = srv.bind_to_any_port(host);
  } else {
    if (!srv.bind_to_port(host, port)) {
      throw error("cannot bind " + host + ":" + std::to_string(port));
    }
    port_ = port;
  }
  if (port_ <= 0) {
    throw error("cannot bind " + host);
  }
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  srv.wait_until_ready();
  return port_;
}

void registry_server::stop() {
  // Only flags the accept loop; joining happens in wait() / the
  // destructor so that stop() stays callable from a signal handler.
  if (impl_) {
    impl_->server.stop();
  }
}

void registry_server::wait() {
  if (thread_.joinable()) {
    thread_.join();
  }
}

}  // namespace pidinst
