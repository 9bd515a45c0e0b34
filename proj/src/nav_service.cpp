#include "wayfind/nav_service.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>
#include <variant>

#include <nlohmann/json.hpp>

#include "wayfind/json_io.hpp"
#include "wayfind/qr_codec.hpp"

namespace wayfind::service {

namespace {

using ordered_json = nlohmann::ordered_json;

Response json_response(int status, const ordered_json& body) { return {status, body.dump(), "application/json"}; }

Response error_response(int status, std::string_view error, std::string_view message) {
  ordered_json body;
  body["error"] = error;
  body["message"] = message;
  return json_response(status, body);
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    if (path[i] == '/') {
      ++i;
      continue;
    }
    const std::size_t j = std::min(path.find('/', i), path.size());
    parts.push_back(path.substr(i, j - i));
    i = j;
  }
  return parts;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t secs = std::chrono::system_clock::to_time_t(now);
  const auto millis =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[40];
  const std::size_t n = std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  std::snprintf(buf + n, sizeof buf - n, ".%03dZ", static_cast<int>(millis));
  return buf;
}

ordered_json logged_to_json(const LoggedEvent& e) {
  ordered_json j;
  j["seq"] = e.seq;
  j["timestamp"] = e.timestamp;
  j["kind"] = to_string(e.event.kind);
  j["text"] = e.event.text;
  j["vibrate"] = e.event.vibrate;
  return j;
}

ordered_json append_events(std::vector<LoggedEvent>& log, const std::vector<InstructionEvent>& events) {
  auto out = ordered_json::array();
  for (const auto& e : events) {
    log.push_back({log.size() + 1, utc_timestamp(), e});
    out.push_back(logged_to_json(log.back()));
  }
  return out;
}

std::optional<nlohmann::json> parse_object(std::string_view body) {
  auto j = nlohmann::json::parse(body.begin(), body.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return std::nullopt;
  }
  return j;
}

ordered_json node_list(const std::vector<NodeId>& nodes) {
  auto out = ordered_json::array();
  for (const auto& n : nodes) {
    out.push_back(n.str());
  }
  return out;
}

ordered_json optional_id(const std::optional<NodeId>& id) { return id ? ordered_json(id->str()) : ordered_json(); }

}  // namespace

MapStore MapStore::load_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw MapParseError("map directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  MapStore store;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    try {
      store.add(std::move(text));
    } catch (const MapError& e) {
      throw MapParseError(file.string() + ": " + e.what());
    }
  }
  return store;
}

void MapStore::add(std::string document) {
  auto graph = std::make_shared<const MapGraph>(load_map(std::string_view(document)));
  std::string id = graph->map_id();
  if (maps_.contains(id)) {
    throw MapParseError("duplicate map id '" + id + "'");
  }
  maps_.emplace(std::move(id), Entry{std::move(graph), std::move(document)});
}

const MapGraph* MapStore::find(std::string_view map_id) const {
  auto it = maps_.find(map_id);
  return it == maps_.end() ? nullptr : it->second.graph.get();
}

std::shared_ptr<const MapGraph> MapStore::share(std::string_view map_id) const {
  auto it = maps_.find(map_id);
  return it == maps_.end() ? nullptr : it->second.graph;
}

const std::string* MapStore::document(std::string_view map_id) const {
  auto it = maps_.find(map_id);
  return it == maps_.end() ? nullptr : &it->second.document;
}

std::vector<std::string> MapStore::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : maps_) {
    out.push_back(id);
  }
  return out;
}

NavService::NavService(MapStore maps) : maps_(std::move(maps)) {
  std::random_device rd;
  std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
  rng_.seed(seq);
}

NavService::NavService(MapStore maps, std::uint64_t id_seed) : maps_(std::move(maps)), rng_(id_seed) {}

std::size_t NavService::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

std::string NavService::new_session_id() {
  std::lock_guard lock(rng_mutex_);
  char buf[33];
  const std::uint64_t hi = rng_();
  const std::uint64_t lo = rng_();
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return std::string(buf, 32);
}

std::shared_ptr<NavService::Session> NavService::find_session(std::string_view id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(std::string(id));
  return it == sessions_.end() ? nullptr : it->second;
}

Response NavService::handle(std::string_view method, std::string_view path,
                            const std::map<std::string, std::string>& query, std::string_view body) {
  const auto parts = split_path(path);
  if (parts.size() < 2 || parts[0] != "v1") {
    return error_response(404, "not_found", "no such endpoint");
  }

  if (parts[1] == "maps") {
    if (method != "GET") {
      return error_response(405, "method_not_allowed", "maps are read-only");
    }
    if (parts.size() == 2) {
      return list_maps();
    }
    if (parts.size() == 3) {
      return get_map(parts[2]);
    }
    return error_response(404, "not_found", "no such endpoint");
  }

  if (parts[1] != "sessions") {
    return error_response(404, "not_found", "no such endpoint");
  }
  if (parts.size() == 2) {
    if (method != "POST") {
      return error_response(405, "method_not_allowed", "use POST to create a session");
    }
    return create_session(body);
  }
  if (parts.size() > 4) {
    return error_response(404, "not_found", "no such endpoint");
  }

  const std::string id(parts[2]);
  auto session = find_session(id);
  if (!session) {
    return error_response(404, "unknown_session", "no session '" + id + "'");
  }
  if (parts.size() == 3) {
    if (method != "GET") {
      return error_response(405, "method_not_allowed", "use GET to read a session");
    }
    return get_state(id, *session, query);
  }
  if (method != "POST") {
    return error_response(405, "method_not_allowed", "use POST");
  }
  if (parts[3] == "scan") {
    return post_scan(*session, body);
  }
  if (parts[3] == "destination") {
    return post_destination(*session, body);
  }
  return error_response(404, "not_found", "no such endpoint");
}

Response NavService::create_session(std::string_view body) {
  const auto req = parse_object(body);
  if (!req || !req->contains("map_id") || !(*req)["map_id"].is_string()) {
    return error_response(400, "bad_request", "body must be {\"map_id\": string}");
  }
  const std::string map_id = (*req)["map_id"].get<std::string>();
  auto graph = maps_.share(map_id);
  if (!graph) {
    return error_response(404, "unknown_map", "no map '" + map_id + "'");
  }
  auto session = std::make_shared<Session>(std::move(graph));
  const InstructionEvent prompt = session->trip.current_prompt();
  std::string id;
  {
    std::unique_lock lock(sessions_mutex_);
    do {
      id = new_session_id();
    } while (sessions_.contains(id));
    sessions_.emplace(id, std::move(session));
  }
  ordered_json out;
  out["session_id"] = id;
  out["map_id"] = map_id;
  out["state"] = "awaiting_first_scan";
  out["prompt"] = event_to_json(prompt);
  return json_response(201, out);
}

Response NavService::post_scan(Session& session, std::string_view body) {
  const auto req = parse_object(body);
  if (!req || !req->contains("payload") || !(*req)["payload"].is_string()) {
    return error_response(400, "bad_request", "body must be {\"payload\": string}");
  }
  const std::string payload = (*req)["payload"].get<std::string>();
  std::optional<qr::DecodeErrorKind> decode_error;
  try {
    (void)qr::decode(payload);
  } catch (const qr::DecodeError& e) {
    decode_error = e.kind();
  }

  std::lock_guard lock(session.mutex);
  ordered_json out;
  if (decode_error) {
    out["error"] = qr::to_string(*decode_error);
  }
  out["events"] = append_events(session.log, session.trip.on_scan(payload));
  out["state"] = state_name(session.trip.state());
  return json_response(decode_error ? 422 : 200, out);
}

Response NavService::post_destination(Session& session, std::string_view body) {
  const auto req = parse_object(body);
  if (!req || !req->contains("destination") || !(*req)["destination"].is_string() || !req->contains("mode") ||
      !(*req)["mode"].is_string()) {
    return error_response(400, "bad_request", "body must be {\"destination\": string, \"mode\": string}");
  }
  const auto mode = parse_route_mode((*req)["mode"].get<std::string>());
  if (!mode) {
    return error_response(400, "bad_mode", "mode must be \"shortest\" or \"optimal\"");
  }
  const std::string dest = (*req)["destination"].get<std::string>();
  if (!NodeId::is_valid(dest)) {
    return error_response(422, "unknown_destination", "invalid destination id");
  }

  std::lock_guard lock(session.mutex);
  std::vector<InstructionEvent> events;
  try {
    events = session.trip.select_destination({NodeId(dest), *mode});
  } catch (const SessionError& e) {
    switch (e.kind()) {
      case SessionError::Kind::not_at_node:
        return error_response(409, "state_conflict", e.what());
      case SessionError::Kind::unknown_destination:
        return error_response(422, "unknown_destination", e.what());
      case SessionError::Kind::not_a_destination:
        return error_response(422, "not_a_destination", e.what());
    }
  }
  ordered_json out;
  if (const auto* nav = std::get_if<trip::Navigating>(&session.trip.state())) {
    out["route"] = route_to_json(nav->route);
  } else {
    out["route"] = nullptr;
  }
  out["events"] = append_events(session.log, events);
  out["state"] = state_name(session.trip.state());
  return json_response(200, out);
}

Response NavService::get_state(const std::string& id, Session& session,
                               const std::map<std::string, std::string>& query) {
  std::uint64_t after = 0;
  if (auto it = query.find("after"); it != query.end()) {
    const auto& s = it->second;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), after);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      return error_response(400, "bad_cursor", "after must be a non-negative integer");
    }
  }

  std::lock_guard lock(session.mutex);
  const TripSession& trip = session.trip;
  ordered_json out;
  out["session_id"] = id;
  out["map_id"] = trip.graph().map_id();
  out["state"] = state_name(trip.state());
  out["current"] = optional_id(trip.position());
  out["last_correct"] = nullptr;
  out["route"] = nullptr;
  out["recovery"] = nullptr;
  if (const auto* nav = std::get_if<trip::Navigating>(&trip.state())) {
    out["last_correct"] = nav->last_correct.str();
    out["route"] = node_list(nav->route.nodes);
  } else if (const auto* dev = std::get_if<trip::Deviated>(&trip.state())) {
    out["last_correct"] = dev->recovery.nodes.back().str();
    out["route"] = node_list(dev->original.nodes);
    out["recovery"] = node_list(dev->recovery.nodes);
  } else if (const auto* arrived = std::get_if<trip::Arrived>(&trip.state())) {
    out["origin"] = arrived->origin.str();
  }
  out["next_expected"] = optional_id(trip.expected_next());
  out["prompt"] = event_to_json(trip.current_prompt());
  out["last_seq"] = session.log.size();
  auto events = ordered_json::array();
  for (const auto& e : session.log) {
    if (e.seq > after) {
      events.push_back(logged_to_json(e));
    }
  }
  out["events"] = std::move(events);
  return json_response(200, out);
}

Response NavService::get_map(std::string_view map_id) const {
  const std::string* doc = maps_.document(map_id);
  if (doc == nullptr) {
    return error_response(404, "unknown_map", "no map '" + std::string(map_id) + "'");
  }
  return {200, *doc, "application/json"};
}

Response NavService::list_maps() const {
  ordered_json out;
  out["maps"] = maps_.ids();
  return json_response(200, out);
}

}  // namespace wayfind::service
