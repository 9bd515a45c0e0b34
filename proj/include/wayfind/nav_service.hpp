#pragma once

// Session service behind the HTTP API. Requests are routed by
// NavService::handle, which knows nothing about sockets; http_server.hpp binds
// it to cpp-httplib. Sessions live in memory only and are lost on restart.
//
//   POST /v1/sessions                    {"map_id"}                 -> 201
//   POST /v1/sessions/{id}/scan          {"payload"}                -> 200 | 422
//   POST /v1/sessions/{id}/destination   {"destination","mode"}     -> 200 | 400 | 409 | 422
//   GET  /v1/sessions/{id}[?after=N]                                -> 200
//   GET  /v1/maps                                                   -> 200
//   GET  /v1/maps/{id}                                              -> 200 (file bytes)

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wayfind/map_model.hpp"
#include "wayfind/trip_engine.hpp"

namespace wayfind::service {

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct LoggedEvent {
  std::uint64_t seq;
  std::string timestamp;  // UTC, ISO 8601 with milliseconds
  InstructionEvent event;
};

/// Maps served by the service, immutable once the service starts.
class MapStore {
 public:
  /// Loads every *.json in `dir`; any invalid map throws (startup must abort).
  static MapStore load_directory(const std::filesystem::path& dir);

  /// `document` is served verbatim by GET /v1/maps/{id}.
  void add(std::string document);

  const MapGraph* find(std::string_view map_id) const;
  std::shared_ptr<const MapGraph> share(std::string_view map_id) const;
  const std::string* document(std::string_view map_id) const;
  std::vector<std::string> ids() const;

 private:
  struct Entry {
    std::shared_ptr<const MapGraph> graph;
    std::string document;
  };
  std::map<std::string, Entry, std::less<>> maps_;
};

class NavService {
 public:
  explicit NavService(MapStore maps);
  NavService(MapStore maps, std::uint64_t id_seed);

  /// `query` holds decoded query parameters.
  Response handle(std::string_view method, std::string_view path,
                  const std::map<std::string, std::string>& query, std::string_view body);

  const MapStore& maps() const noexcept { return maps_; }
  std::size_t session_count() const;

 private:
  struct Session {
    std::mutex mutex;
    TripSession trip;
    std::vector<LoggedEvent> log;
    explicit Session(std::shared_ptr<const MapGraph> graph) : trip(std::move(graph)) {}
  };

  Response create_session(std::string_view body);
  Response post_scan(Session& session, std::string_view body);
  Response post_destination(Session& session, std::string_view body);
  Response get_state(const std::string& id, Session& session, const std::map<std::string, std::string>& query);
  Response get_map(std::string_view map_id) const;
  Response list_maps() const;

  std::shared_ptr<Session> find_session(std::string_view id) const;
  std::string new_session_id();

  MapStore maps_;
  mutable std::shared_mutex sessions_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex rng_mutex_;
  std::mt19937_64 rng_;
};

}  // namespace wayfind::service
