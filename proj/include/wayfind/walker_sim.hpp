#pragma once

// Randomised walker used to exercise the trip engine: it follows whatever the
// engine expects next, but with a fixed probability scans a neighbouring strip
// that is not the expected one. Every step is checked against the session
// invariants. Trials are independent and seeded by index, so the parallel
// run reproduces the serial one exactly.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "wayfind/map_model.hpp"
#include "wayfind/pathfinder.hpp"
#include "wayfind/sweep.hpp"

namespace wayfind {

struct WalkerConfig {
  double off_route_probability = 0.2;
  std::size_t scan_budget_factor = 10;  // budget = factor * planned route length (nodes)
};

struct TrialResult {
  std::size_t src = 0;
  std::size_t dst = 0;
  RouteMode mode = RouteMode::shortest;
  std::size_t route_length = 0;
  std::size_t scans = 0;
  std::size_t deviations = 0;
  bool arrived = false;
  std::vector<std::string> violations;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

struct FuzzReport {
  std::vector<TrialResult> trials;
  double seconds = 0.0;

  std::size_t arrived() const noexcept;
  std::size_t deviations() const noexcept;
  std::size_t violations() const noexcept;
};

TrialResult run_walker_trial(const std::shared_ptr<const MapGraph>& graph, std::uint64_t seed,
                             const WalkerConfig& config = {});

/// Trial i uses seed `base_seed + i`.
FuzzReport run_walker_trials(const std::shared_ptr<const MapGraph>& graph, std::size_t trials,
                             std::uint64_t base_seed, const WalkerConfig& config, Execution execution);

}  // namespace wayfind
