#pragma once

// Scan-driven trip session. A session starts waiting for the first floor
// code, announces where the walker is, plans a route once a destination is
// chosen, and then follows scans along that route. A scan that is neither the
// expected strip nor a later strip of the route is a deviation: the walker is
// guided back (shortest route) to the last strip they reached correctly, and
// the original route resumes from there.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wayfind/map_model.hpp"
#include "wayfind/pathfinder.hpp"

namespace wayfind {

enum class EventKind {
  announce_location,
  choose_destination,
  proceed,
  turn_left,
  turn_right,
  deviated,
  recovery_proceed,
  arrived,
  arrival_choice,
  scan_prompt,  // initial "scan a code" request
  error,        // unreadable or foreign code; never becomes the current prompt
};

std::string_view to_string(EventKind kind) noexcept;
std::optional<EventKind> parse_event_kind(std::string_view text) noexcept;

struct InstructionEvent {
  EventKind kind;
  std::string text;
  bool vibrate = false;

  friend bool operator==(const InstructionEvent&, const InstructionEvent&) = default;
};

struct DestinationChoice {
  NodeId destination;
  RouteMode mode;
};

namespace trip {

struct AwaitingFirstScan {
  friend bool operator==(const AwaitingFirstScan&, const AwaitingFirstScan&) = default;
};

struct AtNode {
  NodeId current;
  friend bool operator==(const AtNode&, const AtNode&) = default;
};

/// Invariant: 1 <= next_index < route.nodes.size() and
/// route.nodes[next_index - 1] == last_correct.
struct Navigating {
  Route route;
  std::size_t next_index;
  NodeId last_correct;
  friend bool operator==(const Navigating&, const Navigating&) = default;
};

/// Invariant: recovery.nodes.back() == original.nodes[resume_index - 1]; the
/// walker currently stands on recovery.nodes[recovery_index - 1].
struct Deviated {
  Route recovery;
  std::size_t recovery_index;
  Route original;
  std::size_t resume_index;
  friend bool operator==(const Deviated&, const Deviated&) = default;
};

struct Arrived {
  NodeId destination;
  NodeId origin;
  friend bool operator==(const Arrived&, const Arrived&) = default;
};

}  // namespace trip

using TripState = std::variant<trip::AwaitingFirstScan, trip::AtNode, trip::Navigating, trip::Deviated, trip::Arrived>;

/// "awaiting_first_scan", "at_node", "navigating", "deviated" or "arrived".
std::string_view state_name(const TripState& state) noexcept;

class SessionError : public std::runtime_error {
 public:
  enum class Kind { not_at_node, unknown_destination, not_a_destination };

  SessionError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class TripSession {
 public:
  explicit TripSession(std::shared_ptr<const MapGraph> graph);

  /// Total over payloads: undecodable or foreign codes yield a single error
  /// event and leave the state untouched.
  std::vector<InstructionEvent> on_scan(std::string_view payload);

  /// Allowed in AtNode and Arrived; throws SessionError otherwise. Choosing
  /// the current node arrives immediately. From Arrived, the trip origin is
  /// accepted even when it is a waypoint (return trip).
  std::vector<InstructionEvent> select_destination(const DestinationChoice& choice);

  /// The most recent instruction, for replay. Error events are not prompts.
  const InstructionEvent& current_prompt() const noexcept { return prompt_; }

  const TripState& state() const noexcept { return state_; }
  const MapGraph& graph() const noexcept { return *graph_; }

  /// Node the walker is standing on, if known.
  std::optional<NodeId> position() const;
  /// Strip the engine expects next (route or recovery), if navigating.
  std::optional<NodeId> expected_next() const;

 private:
  std::vector<InstructionEvent> scan_node(std::size_t node);
  std::vector<InstructionEvent> announce(std::size_t node);
  std::vector<InstructionEvent> advance_to(trip::Navigating nav, std::size_t reached_index, std::size_t skipped);
  std::vector<InstructionEvent> deviate(std::size_t scanned, Route original, std::size_t resume_index);
  std::vector<InstructionEvent> resume(const trip::Deviated& dev);
  std::vector<InstructionEvent> emit(std::vector<InstructionEvent> events);

  std::string describe(std::size_t node) const;

  std::shared_ptr<const MapGraph> graph_;
  TripState state_;
  InstructionEvent prompt_;
};

inline TripSession start_session(std::shared_ptr<const MapGraph> graph) { return TripSession(std::move(graph)); }

inline constexpr std::string_view kInitialPrompt = "Scan the nearest floor code to find out where you are.";
inline constexpr std::string_view kUnreadableText = "Unreadable code, rescan.";
inline constexpr std::string_view kUnknownLocationText = "Unknown location. This code does not belong to this map.";
inline constexpr std::string_view kDestinationReachedText = "Destination Reached.";

}  // namespace wayfind
