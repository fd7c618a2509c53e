#include "pidinst/client.hpp"

#include <httplib.h>

#include "pidinst/json.hpp"

namespace pidinst {

namespace {

void require_transport(const httplib::Result& result, const char* op) {
  if (!result) {
    throw transport_error(std::string(op) +
                          " failed: transport error: " + httplib::to_string(result.error()));
  }
}

std::string server_message(const httplib::Result& result) {
  try {
    json body = json::parse(result->body);
    if (body.contains("error") && body["error"].contains("message")) {
      return body["error"]["message"].get<std::string>();
    }
  } catch (const nlohmann::json::parse_error&) {
  }
  return "unexpected status " + std::to_string(result->status);
}

}  // namespace

registry_client::registry_client(std::string base_url, std::string api_token)
    : base_url_(std::move(base_url)), api_token_(std::move(api_token)) {
  while (!base_url_.empty() && base_url_.back() == '/') {
    base_url_.pop_back();
  }
}

std::string registry_client::mint(const std::string& canonical_record) {
  httplib::Client client(base_url_);
  httplib::Headers headers;
  if (!api_token_.empty()) {
    headers.emplace("Authorization", "Bearer " + api_token_);
  }
  auto result = client.Post("/api/v1/instruments", headers, canonical_record, "application/json");
  require_transport(result, "mint");
  if (result->status != 201) {
    throw error("mint failed: " + server_message(result));
  }
  json body = json::parse(result->body);
  return body.at("pid").get<std::string>();
}

registry_client::resolution_result registry_client::resolve(const std::string& pid_value,
                                                            bool noredirect) {
  httplib::Client client(base_url_);
  client.set_follow_location(false);
  std::string path = "/" + pid_value + (noredirect ? "?noredirect" : "");
  auto result = client.Get(path);
  require_transport(result, "resolve");
  resolution_result out;
  out.status = result->status;
  if (result->status == 302) {
    out.landing_page = result->get_header_value("Location");
  } else if (result->status == 200 || result->status == 410) {
    out.body = result->body;
  } else {
    throw error("resolve failed: " + server_message(result));
  }
  return out;
}

void registry_client::tombstone(const std::string& pid_value) {
  httplib::Client client(base_url_);
  httplib::Headers headers;
  if (!api_token_.empty()) {
    headers.emplace("Authorization", "Bearer " + api_token_);
  }
  auto result = client.Delete("/api/v1/instruments/" + pid_value, headers);
  require_transport(result, "tombstone");
  if (result->status != 204) {
    throw error("tombstone failed: " + server_message(result));
  }
}

std::string registry_client::fetch_record(const std::string& pid_value,
                                          std::optional<int> version) {
  httplib::Client client(base_url_);
  std::string path = "/api/v1/instruments/" + pid_value;
  if (version) {
    path += "?version=" + std::to_string(*version);
  }
  auto result = client.Get(path);
  require_transport(result, "fetch");
  if (result->status != 200 && result->status != 410) {
    throw error("fetch failed: " + server_message(result));
  }
  return result->body;
}

std::optional<int> probe_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    return std::nullopt;
  }
  auto path_begin = url.find('/', scheme_end + 3);
  std::string origin = path_begin == std::string::npos ? url : url.substr(0, path_begin);
  std::string path = path_begin == std::string::npos ? "/" : url.substr(path_begin);
  httplib::Client client(origin);
  client.set_follow_location(true);
  client.set_connection_timeout(5, 0);
  client.set_read_timeout(5, 0);
  auto result = client.Get(path);
  if (!result) {
    return std::nullopt;
  }
  return result->status;
}

}  // namespace pidinst
