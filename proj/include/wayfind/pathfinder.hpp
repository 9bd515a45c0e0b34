#pragma once

// Route planning over a MapGraph.
//
// Two costs are supported: total walking distance ("shortest") and number of
// turns ("optimal"). A turn is an interior route node where the heading
// change has magnitude >= 45 degrees. Ties are broken by the other cost and
// then by the lexicographic order of the node-id sequence, so every query has
// exactly one answer.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wayfind/map_model.hpp"

namespace wayfind {

enum class RouteMode { shortest, optimal };

std::string_view to_string(RouteMode mode) noexcept;
std::optional<RouteMode> parse_route_mode(std::string_view text) noexcept;

inline constexpr double kTurnThresholdDegrees = 45.0;
inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

enum class TurnDirection { straight, left, right };

/// Signed heading change in (-180, 180] when walking in `incoming` then `outgoing`.
double heading_change(double incoming, double outgoing) noexcept;
TurnDirection classify_turn(double incoming, double outgoing) noexcept;

struct Route {
  std::vector<NodeId> nodes;
  double distance = 0.0;
  int turns = 0;
  /// Heading of each step, nodes.size() - 1 entries.
  std::vector<double> legs;

  friend bool operator==(const Route&, const Route&) = default;
};

struct SearchStats {
  /// Distinct graph nodes expanded.
  std::size_t nodes_expanded = 0;
  /// Search states popped and expanded; plan_route searches (node, arrival
  /// edge) states, so a junction can count once per incoming edge.
  std::size_t states_expanded = 0;
  std::size_t paths_enumerated = 0;
};

class RouteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A node sequence that is not a connected simple path.
class InvalidPathError : public RouteError {
 public:
  using RouteError::RouteError;
};

class UnreachableError : public RouteError {
 public:
  using RouteError::RouteError;
};

/// More simple paths exist than the enumeration cap allows.
class EnumerationOverflowError : public RouteError {
 public:
  using RouteError::RouteError;
};

/// Number of turns along `nodes`. Throws InvalidPathError on a non-adjacent pair
/// or a repeated node; UnknownNodeError on an id not in the map.
int path_turn_cost(const MapGraph& graph, std::span<const NodeId> nodes);

/// Builds a Route (distance summed in path order, turns, legs) from a node sequence.
Route make_route(const MapGraph& graph, std::span<const NodeId> nodes);

/// Every simple path from `src` to `dst`, lexicographic by node sequence.
/// Exhaustive: throws EnumerationOverflowError instead of truncating.
std::vector<Route> enumerate_simple_paths(const MapGraph& graph, const NodeId& src, const NodeId& dst,
                                          std::size_t cap = kDefaultEnumerationCap,
                                          SearchStats* stats = nullptr);

/// Best route under `mode`: shortest minimises (distance, turns, sequence),
/// optimal minimises (turns, distance, sequence).
Route plan_route(const MapGraph& graph, const NodeId& src, const NodeId& dst, RouteMode mode,
                 SearchStats* stats = nullptr);

/// Index-level variant used by sweeps; `src`/`dst` are node indices.
Route plan_route(const MapGraph& graph, std::size_t src, std::size_t dst, RouteMode mode,
                 SearchStats* stats = nullptr);

enum class BaselineStrategy { bfs, dfs, greedy, dijkstra };

std::string_view to_string(BaselineStrategy strategy) noexcept;

struct BaselineResult {
  Route route;
  SearchStats stats;
};

/// Classical uninformed / greedy strategies, ties broken by ascending node id.
/// Only bfs (hops) and dijkstra (distance) promise optimality.
BaselineResult baseline_search(const MapGraph& graph, const NodeId& src, const NodeId& dst,
                               BaselineStrategy strategy);

}  // namespace wayfind
