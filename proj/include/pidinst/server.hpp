#pragma once

#include <memory>
#include <string>
#include <thread>

#include "pidinst/registry.hpp"

namespace pidinst {

/// HTTP front end for the registry.
///
///   POST   /api/v1/instruments                      mint; 201 {"pid"}
///   GET    /api/v1/instruments?cursor=&limit=       paginated listing
///   GET    /api/v1/instruments/{prefix}/{suffix}    canonical record; ?version=n
///   PUT    /api/v1/instruments/{prefix}/{suffix}    update, If-Match: "<version>"
///   DELETE /api/v1/instruments/{prefix}/{suffix}    tombstone; 204
///   GET    /{prefix}/{suffix}                       302 to the landing page;
///                                                   ?noredirect returns the
///                                                   handle record instead
///
/// Tombstoned PIDs answer 410 and still carry their last metadata.
class registry_server {
 public:
  explicit registry_server(registry& reg);
  ~registry_server();

  registry_server(const registry_server&) = delete;
  registry_server& operator=(const registry_server&) = delete;

  /// Binds and serves on a background thread. port 0 picks an ephemeral
  /// port; the bound port is returned.
  int start(const std::string& host, int port);
  void stop();
  /// Parks the caller until stop() is invoked (e.g. from a signal handler).
  void wait();
  int port() const { return port_; }

 private:
  struct impl;
  void setup_routes();

  registry& registry_;
  std::unique_ptr<impl> impl_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace pidinst
