#include "wayfind/http_server.hpp"

#include <httplib.h>

namespace wayfind::service {

HttpServer::HttpServer(NavService& service) : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [key, value] : req.params) {
      query.emplace(key, value);
    }
    const Response out = service_.handle(req.method, req.path, query, req.body);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  server_->Get(R"(/.*)", dispatch);
  server_->Post(R"(/.*)", dispatch);
  server_->Put(R"(/.*)", dispatch);
  server_->Delete(R"(/.*)", dispatch);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    return server_->bind_to_any_port(host);
  }
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_ && server_->is_running()) {
    server_->stop();
  }
}

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace wayfind::service
