#include "wayfind/trip_engine.hpp"

#include <cmath>
#include <cstdio>

#include "wayfind/qr_codec.hpp"

namespace wayfind {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kTurnAroundDegrees = 135.0;

EventKind kind_for(double delta) {
  if (delta >= kTurnThresholdDegrees) {
    return EventKind::turn_left;
  }
  if (delta <= -kTurnThresholdDegrees) {
    return EventKind::turn_right;
  }
  return EventKind::proceed;
}

std::string direction_phrase(double delta) {
  if (std::abs(delta) >= kTurnAroundDegrees) {
    return "Turn around and walk to ";
  }
  if (delta >= kTurnThresholdDegrees) {
    return "Turn left and walk to ";
  }
  if (delta <= -kTurnThresholdDegrees) {
    return "Turn right and walk to ";
  }
  return "Continue straight to ";
}

std::string meters(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0f m", d);
  return buf;
}

std::string plural(std::size_t n, std::string_view word) {
  return std::to_string(n) + " " + std::string(word) + (n == 1 ? "" : "s");
}

}  // namespace

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::announce_location:
      return "announce_location";
    case EventKind::choose_destination:
      return "choose_destination";
    case EventKind::proceed:
      return "proceed";
    case EventKind::turn_left:
      return "turn_left";
    case EventKind::turn_right:
      return "turn_right";
    case EventKind::deviated:
      return "deviated";
    case EventKind::recovery_proceed:
      return "recovery_proceed";
    case EventKind::arrived:
      return "arrived";
    case EventKind::arrival_choice:
      return "arrival_choice";
    case EventKind::scan_prompt:
      return "scan_prompt";
    case EventKind::error:
      return "error";
  }
  return "unknown";
}

std::optional<EventKind> parse_event_kind(std::string_view text) noexcept {
  for (int k = 0; k <= static_cast<int>(EventKind::error); ++k) {
    if (to_string(static_cast<EventKind>(k)) == text) {
      return static_cast<EventKind>(k);
    }
  }
  return std::nullopt;
}

std::string_view state_name(const TripState& state) noexcept {
  return std::visit(overloaded{
                        [](const trip::AwaitingFirstScan&) { return std::string_view("awaiting_first_scan"); },
                        [](const trip::AtNode&) { return std::string_view("at_node"); },
                        [](const trip::Navigating&) { return std::string_view("navigating"); },
                        [](const trip::Deviated&) { return std::string_view("deviated"); },
                        [](const trip::Arrived&) { return std::string_view("arrived"); },
                    },
                    state);
}

TripSession::TripSession(std::shared_ptr<const MapGraph> graph)
    : graph_(std::move(graph)),
      state_(trip::AwaitingFirstScan{}),
      prompt_{EventKind::scan_prompt, std::string(kInitialPrompt), false} {
  if (!graph_) {
    throw std::invalid_argument("trip session needs a map");
  }
}

std::optional<NodeId> TripSession::position() const {
  return std::visit(overloaded{
                        [](const trip::AwaitingFirstScan&) -> std::optional<NodeId> { return std::nullopt; },
                        [](const trip::AtNode& s) -> std::optional<NodeId> { return s.current; },
                        [](const trip::Navigating& s) -> std::optional<NodeId> { return s.last_correct; },
                        [](const trip::Deviated& s) -> std::optional<NodeId> {
                          return s.recovery.nodes[s.recovery_index - 1];
                        },
                        [](const trip::Arrived& s) -> std::optional<NodeId> { return s.destination; },
                    },
                    state_);
}

std::optional<NodeId> TripSession::expected_next() const {
  if (const auto* nav = std::get_if<trip::Navigating>(&state_)) {
    return nav->route.nodes[nav->next_index];
  }
  if (const auto* dev = std::get_if<trip::Deviated>(&state_)) {
    return dev->recovery.nodes[dev->recovery_index];
  }
  return std::nullopt;
}

std::vector<InstructionEvent> TripSession::on_scan(std::string_view payload) {
  qr::Location loc;
  try {
    loc = qr::decode(payload);
  } catch (const qr::DecodeError&) {
    return {{EventKind::error, std::string(kUnreadableText), false}};
  }
  const auto node = loc.map_id == graph_->map_id() ? graph_->index_of(loc.node_id) : std::nullopt;
  if (!node) {
    return {{EventKind::error, std::string(kUnknownLocationText), false}};
  }
  return scan_node(*node);
}

std::vector<InstructionEvent> TripSession::scan_node(std::size_t n) {
  const NodeId& id = graph_->node(n).id;
  if (position() == id) {
    return {prompt_};
  }

  if (auto* nav = std::get_if<trip::Navigating>(&state_)) {
    const auto& nodes = nav->route.nodes;
    for (std::size_t j = nav->next_index; j < nodes.size(); ++j) {
      if (nodes[j] == id) {
        return advance_to(*nav, j, j - nav->next_index);
      }
    }
    return deviate(n, nav->route, nav->next_index);
  }

  if (auto* dev = std::get_if<trip::Deviated>(&state_)) {
    if (id == dev->recovery.nodes.back()) {
      return resume(*dev);
    }
    if (id == dev->recovery.nodes[dev->recovery_index]) {
      const std::size_t k = dev->recovery_index;
      dev->recovery_index = k + 1;
      const double delta = heading_change(dev->recovery.legs[k - 1], dev->recovery.legs[k]);
      return emit({{EventKind::recovery_proceed,
                    direction_phrase(delta) + describe(graph_->require_index(dev->recovery.nodes[k + 1].str())) +
                        " to get back on your route.",
                    false}});
    }
    return deviate(n, dev->original, dev->resume_index);
  }

  // AwaitingFirstScan, AtNode and Arrived all relocate to the scanned node.
  return announce(n);
}

std::vector<InstructionEvent> TripSession::announce(std::size_t n) {
  const MapNode& node = graph_->node(n);
  state_ = trip::AtNode{node.id};
  std::string text = "You are at " + describe(n) + ".";
  if (node.announcement && !node.announcement->empty()) {
    text += " " + *node.announcement;
  }
  return emit({{EventKind::announce_location, std::move(text), false},
               {EventKind::choose_destination, "Choose a destination, then choose the shortest or the optimal route.",
                false}});
}

std::vector<InstructionEvent> TripSession::advance_to(trip::Navigating nav, std::size_t j, std::size_t skipped) {
  const auto& nodes = nav.route.nodes;
  const std::string notice =
      skipped == 0 ? std::string() : "Skipped " + plural(skipped, "floor code") + ". ";
  const std::size_t here = graph_->require_index(nodes[j].str());

  if (j + 1 == nodes.size()) {
    const std::size_t origin = graph_->require_index(nodes.front().str());
    state_ = trip::Arrived{nodes[j], nodes.front()};
    return emit({{EventKind::arrived, notice + std::string(kDestinationReachedText) + " You are at " +
                                          describe(here) + ".",
                  false},
                 {EventKind::arrival_choice,
                  "Double tap to go back to " + describe(origin) + " where you started, or choose a new destination.",
                  false}});
  }

  const double delta = heading_change(nav.route.legs[j - 1], nav.route.legs[j]);
  const std::size_t next = graph_->require_index(nodes[j + 1].str());
  std::string text = notice + direction_phrase(delta) + describe(next) + ".";
  nav.next_index = j + 1;
  nav.last_correct = nodes[j];
  state_ = std::move(nav);
  return emit({{kind_for(delta), std::move(text), false}});
}

std::vector<InstructionEvent> TripSession::deviate(std::size_t scanned, Route original, std::size_t resume_index) {
  const NodeId last_correct = original.nodes[resume_index - 1];
  const std::size_t target = graph_->require_index(last_correct.str());
  Route recovery = plan_route(*graph_, scanned, target, RouteMode::shortest);
  const std::size_t first_step = graph_->require_index(recovery.nodes[1].str());
  state_ = trip::Deviated{std::move(recovery), 1, std::move(original), resume_index};
  return emit({{EventKind::deviated,
                "You have left your route at " + describe(scanned) + ". Going back to " + describe(target) + ".",
                true},
               {EventKind::recovery_proceed, "Walk to " + describe(first_step) + " to get back on your route.",
                false}});
}

std::vector<InstructionEvent> TripSession::resume(const trip::Deviated& dev) {
  // The walker arrives from the recovery direction, so the instruction is
  // relative to the last recovery leg rather than the original route.
  const std::size_t k = dev.resume_index;
  const double delta = heading_change(dev.recovery.legs.back(), dev.original.legs[k - 1]);
  const std::size_t next = graph_->require_index(dev.original.nodes[k].str());
  std::string text = "Back on your route. " + direction_phrase(delta) + describe(next) + ".";
  const EventKind kind = kind_for(delta);
  state_ = trip::Navigating{dev.original, k, dev.original.nodes[k - 1]};
  return emit({{kind, std::move(text), false}});
}

std::vector<InstructionEvent> TripSession::emit(std::vector<InstructionEvent> events) {
  if (!events.empty() && events.back().kind != EventKind::error) {
    prompt_ = events.back();
  }
  return events;
}

std::string TripSession::describe(std::size_t node) const {
  const MapNode& n = graph_->node(node);
  return n.label.empty() ? "floor code " + n.id.str() : n.label;
}

std::vector<InstructionEvent> TripSession::select_destination(const DestinationChoice& choice) {
  std::optional<NodeId> here;
  std::optional<NodeId> origin;
  if (const auto* at = std::get_if<trip::AtNode>(&state_)) {
    here = at->current;
  } else if (const auto* arrived = std::get_if<trip::Arrived>(&state_)) {
    here = arrived->destination;
    origin = arrived->origin;
  } else {
    throw SessionError(SessionError::Kind::not_at_node,
                       "a destination can only be chosen at a known location (state " +
                           std::string(state_name(state_)) + ")");
  }

  const auto dest = graph_->index_of(choice.destination.str());
  if (!dest) {
    throw SessionError(SessionError::Kind::unknown_destination,
                       "unknown destination '" + choice.destination.str() + "'");
  }
  const bool return_trip = origin && *origin == choice.destination;
  if (graph_->node(*dest).kind != NodeKind::destination && !return_trip) {
    throw SessionError(SessionError::Kind::not_a_destination,
                       "'" + choice.destination.str() + "' is not a destination");
  }

  if (choice.destination == *here) {
    state_ = trip::Arrived{*here, *here};
    return emit({{EventKind::arrived, std::string(kDestinationReachedText) + " You are already at " +
                                          describe(*dest) + ".",
                  false},
                 {EventKind::arrival_choice, "Choose a new destination.", false}});
  }

  const std::size_t from = graph_->require_index(here->str());
  Route route = plan_route(*graph_, from, *dest, choice.mode);
  const std::size_t first_step = graph_->require_index(route.nodes[1].str());
  std::string text = "Route to " + describe(*dest) + ": " + meters(route.distance) + ", " +
                     plural(static_cast<std::size_t>(route.turns), "turn") + ". Walk to " + describe(first_step) +
                     ".";
  state_ = trip::Navigating{std::move(route), 1, *here};
  return emit({{EventKind::proceed, std::move(text), false}});
}

}  // namespace wayfind
