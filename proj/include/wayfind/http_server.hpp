#pragma once

#include <memory>
#include <string>

#include "wayfind/nav_service.hpp"

namespace httplib {
class Server;
}

namespace wayfind::service {

/// cpp-httplib front end for a NavService. The service must outlive the server.
class HttpServer {
 public:
  explicit HttpServer(NavService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds `port` (0 picks a free port); returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called from another thread.
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  NavService& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace wayfind::service
