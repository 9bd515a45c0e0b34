#pragma once

#include <nlohmann/json.hpp>

#include "wayfind/pathfinder.hpp"
#include "wayfind/trip_engine.hpp"

namespace wayfind {

/// {"nodes":[...],"distance":d,"turns":t,"legs":[...]}
nlohmann::ordered_json route_to_json(const Route& route);

/// {"kind":k,"text":s,"vibrate":b}
nlohmann::ordered_json event_to_json(const InstructionEvent& event);

/// Inverse of event_to_json; throws std::invalid_argument on a malformed object.
InstructionEvent event_from_json(const nlohmann::json& j);

}  // namespace wayfind
