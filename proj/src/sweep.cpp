#include "wayfind/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>

#include "wayfind/pathfinder.hpp"

namespace wayfind {

bool nearly_equal(double a, double b, double rel) noexcept {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

std::size_t SweepReport::failures() const noexcept {
  return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [](const auto& p) { return !p.ok(); }));
}

PairCheck check_pair(const MapGraph& graph, std::size_t src, std::size_t dst) {
  PairCheck c;
  c.src = src;
  c.dst = dst;
  try {
    const NodeId& s = graph.node(src).id;
    const NodeId& t = graph.node(dst).id;
    const auto paths = enumerate_simple_paths(graph, s, t);
    c.simple_paths = paths.size();
    c.min_turns = std::numeric_limits<int>::max();
    c.min_distance = std::numeric_limits<double>::infinity();
    for (const auto& r : paths) {
      c.min_turns = std::min(c.min_turns, r.turns);
      c.min_distance = std::min(c.min_distance, r.distance);
    }

    c.optimal_turns = plan_route(graph, src, dst, RouteMode::optimal).turns;
    SearchStats astar;
    c.shortest_distance = plan_route(graph, src, dst, RouteMode::shortest, &astar).distance;
    c.astar_expanded = astar.nodes_expanded;

    const auto dijkstra = baseline_search(graph, s, t, BaselineStrategy::dijkstra);
    c.dijkstra_distance = dijkstra.route.distance;
    c.dijkstra_expanded = dijkstra.stats.nodes_expanded;

    c.turns_match = c.optimal_turns == c.min_turns;
    c.distance_match = nearly_equal(c.shortest_distance, c.min_distance);
    c.dijkstra_match = nearly_equal(c.dijkstra_distance, c.shortest_distance);
    c.astar_within_dijkstra = c.astar_expanded <= c.dijkstra_expanded;
  } catch (const std::exception& e) {
    c.error = e.what();
  }
  return c;
}

SweepReport oracle_sweep(const MapGraph& graph, Execution execution, std::span<const std::size_t> endpoints) {
  std::vector<std::size_t> ends(endpoints.begin(), endpoints.end());
  if (ends.empty()) {
    ends = graph.destination_indices();
  }
  std::vector<std::pair<std::size_t, std::size_t>> work;
  for (std::size_t s : ends) {
    for (std::size_t t : ends) {
      if (s != t) {
        work.emplace_back(s, t);
      }
    }
  }

  SweepReport report;
  report.pairs.resize(work.size());
  const auto start = std::chrono::steady_clock::now();
  const auto n = static_cast<std::ptrdiff_t>(work.size());
  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto [s, t] = work[static_cast<std::size_t>(i)];
      report.pairs[static_cast<std::size_t>(i)] = check_pair(graph, s, t);
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto [s, t] = work[static_cast<std::size_t>(i)];
      report.pairs[static_cast<std::size_t>(i)] = check_pair(graph, s, t);
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace wayfind
