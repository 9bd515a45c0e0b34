#include "wayfind/json_io.hpp"

#include <stdexcept>

namespace wayfind {

nlohmann::ordered_json route_to_json(const Route& route) {
  nlohmann::ordered_json j;
  auto nodes = nlohmann::ordered_json::array();
  for (const auto& id : route.nodes) {
    nodes.push_back(id.str());
  }
  j["nodes"] = std::move(nodes);
  j["distance"] = route.distance;
  j["turns"] = route.turns;
  j["legs"] = route.legs;
  return j;
}

nlohmann::ordered_json event_to_json(const InstructionEvent& event) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(event.kind);
  j["text"] = event.text;
  j["vibrate"] = event.vibrate;
  return j;
}

InstructionEvent event_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("text") || !j.contains("vibrate") ||
      !j["kind"].is_string() || !j["text"].is_string() || !j["vibrate"].is_boolean()) {
    throw std::invalid_argument("malformed event object");
  }
  const auto kind = parse_event_kind(j["kind"].get<std::string>());
  if (!kind) {
    throw std::invalid_argument("unknown event kind");
  }
  return {*kind, j["text"].get<std::string>(), j["vibrate"].get<bool>()};
}

}  // namespace wayfind
