#pragma once

// All-pairs verification of the planner against the exhaustive path
// enumeration and the Dijkstra baseline. The per-pair kernel is independent,
// so the sweep runs as an OpenMP parallel loop; the serial loop is kept as
// the reference the parallel one is tested against.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wayfind/map_model.hpp"

namespace wayfind {

inline constexpr double kDistanceRelTolerance = 1e-9;

bool nearly_equal(double a, double b, double rel = kDistanceRelTolerance) noexcept;

struct PairCheck {
  std::size_t src = 0;
  std::size_t dst = 0;
  std::size_t simple_paths = 0;

  int min_turns = 0;             // over enumerated paths
  double min_distance = 0.0;     // over enumerated paths
  int optimal_turns = 0;         // plan_route(optimal)
  double shortest_distance = 0;  // plan_route(shortest)
  double dijkstra_distance = 0;
  std::size_t astar_expanded = 0;     // plan_route(shortest)
  std::size_t dijkstra_expanded = 0;

  bool turns_match = false;
  bool distance_match = false;
  bool dijkstra_match = false;
  bool astar_within_dijkstra = false;
  std::string error;  // non-empty when the kernel threw

  bool ok() const noexcept {
    return error.empty() && turns_match && distance_match && dijkstra_match && astar_within_dijkstra;
  }
};

struct SweepReport {
  std::vector<PairCheck> pairs;
  double seconds = 0.0;

  std::size_t failures() const noexcept;
  bool ok() const noexcept { return failures() == 0; }
};

enum class Execution { serial, parallel };

/// Checks one ordered pair (both modes, oracle, dijkstra).
PairCheck check_pair(const MapGraph& graph, std::size_t src, std::size_t dst);

/// Every ordered pair of distinct `endpoints` (node indices). With an empty
/// span the map's destination nodes are used.
SweepReport oracle_sweep(const MapGraph& graph, Execution execution, std::span<const std::size_t> endpoints = {});

}  // namespace wayfind
