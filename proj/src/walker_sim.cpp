#include "wayfind/walker_sim.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <random>
#include <variant>

#include "wayfind/qr_codec.hpp"
#include "wayfind/trip_engine.hpp"

namespace wayfind {

namespace {

class InvariantLog {
 public:
  explicit InvariantLog(std::vector<std::string>& out) : out_(out) {}
  void check(bool ok, std::size_t step, const std::string& what) {
    if (!ok) {
      out_.push_back("step " + std::to_string(step) + ": " + what);
    }
  }

 private:
  std::vector<std::string>& out_;
};

void check_state(const TripSession& s, InvariantLog& log, std::size_t step) {
  if (const auto* nav = std::get_if<trip::Navigating>(&s.state())) {
    log.check(nav->next_index >= 1 && nav->next_index < nav->route.nodes.size(), step, "next_index out of range");
    log.check(nav->next_index >= 1 && nav->route.nodes[nav->next_index - 1] == nav->last_correct, step,
              "last_correct is not the node before next_index");
  } else if (const auto* dev = std::get_if<trip::Deviated>(&s.state())) {
    log.check(dev->resume_index >= 1 && dev->resume_index < dev->original.nodes.size(), step,
              "resume_index out of range");
    log.check(dev->recovery.nodes.back() == dev->original.nodes[dev->resume_index - 1], step,
              "recovery route does not end at the last correct node");
    log.check(dev->recovery_index >= 1 && dev->recovery_index < dev->recovery.nodes.size(), step,
              "recovery_index out of range");
  }
}

void check_events(const std::vector<InstructionEvent>& events, InvariantLog& log, std::size_t step) {
  for (const auto& e : events) {
    log.check(!e.text.empty(), step, "empty instruction text");
    if (e.kind == EventKind::deviated) {
      log.check(e.vibrate, step, "deviated event without vibration");
    }
  }
}

}  // namespace

std::size_t FuzzReport::arrived() const noexcept {
  return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.arrived; }));
}

std::size_t FuzzReport::deviations() const noexcept {
  std::size_t n = 0;
  for (const auto& t : trials) {
    n += t.deviations;
  }
  return n;
}

std::size_t FuzzReport::violations() const noexcept {
  std::size_t n = 0;
  for (const auto& t : trials) {
    n += t.violations.size();
  }
  return n;
}

TrialResult run_walker_trial(const std::shared_ptr<const MapGraph>& graph, std::uint64_t seed,
                             const WalkerConfig& config) {
  TrialResult result;
  InvariantLog log(result.violations);
  try {
    const MapGraph& g = *graph;
    std::mt19937_64 rng(seed);
    const auto destinations = g.destination_indices();
    if (destinations.size() < 2) {
      log.check(false, 0, "map needs two destinations for a trial");
      return result;
    }
    std::uniform_int_distribution<std::size_t> pick(0, destinations.size() - 1);
    result.src = destinations[pick(rng)];
    do {
      result.dst = destinations[pick(rng)];
    } while (result.dst == result.src);
    result.mode = std::bernoulli_distribution(0.5)(rng) ? RouteMode::optimal : RouteMode::shortest;

    TripSession session(graph);
    auto scan = [&](std::size_t node) {
      ++result.scans;
      return session.on_scan(qr::encode(g.map_id(), g.node(node).id.str()));
    };

    check_events(scan(result.src), log, 0);
    const auto start = session.select_destination({g.node(result.dst).id, result.mode});
    check_events(start, log, 0);
    const auto& planned = std::get<trip::Navigating>(session.state()).route;
    result.route_length = planned.nodes.size();
    const std::size_t budget = config.scan_budget_factor * result.route_length;

    std::bernoulli_distribution stray(config.off_route_probability);
    for (std::size_t step = 1; result.scans < budget; ++step) {
      if (std::holds_alternative<trip::Arrived>(session.state())) {
        break;
      }
      const TripState before = session.state();
      const NodeId expected = *session.expected_next();
      const std::size_t here = g.require_index(session.position()->str());

      std::size_t target = g.require_index(expected.str());
      if (stray(rng)) {
        std::vector<std::size_t> off;
        for (const auto& adj : g.adjacent(here)) {
          if (adj.to != target) {
            off.push_back(adj.to);
          }
        }
        if (!off.empty()) {
          target = off[std::uniform_int_distribution<std::size_t>(0, off.size() - 1)(rng)];
        }
      }

      const auto events = scan(target);
      check_events(events, log, step);
      check_state(session, log, step);
      const bool deviated = std::any_of(events.begin(), events.end(),
                                        [](const auto& e) { return e.kind == EventKind::deviated; });
      if (deviated) {
        ++result.deviations;
        const auto* dev = std::get_if<trip::Deviated>(&session.state());
        log.check(dev != nullptr, step, "deviated event outside the Deviated state");
        NodeId last_correct = expected;
        if (const auto* nav = std::get_if<trip::Navigating>(&before)) {
          last_correct = nav->last_correct;
        } else if (const auto* prev = std::get_if<trip::Deviated>(&before)) {
          last_correct = prev->recovery.nodes.back();
        }
        if (dev != nullptr) {
          log.check(dev->recovery.nodes.back() == last_correct, step,
                    "recovery route ends at " + dev->recovery.nodes.back().str() + ", not at last correct node " +
                        last_correct.str());
          log.check(dev->recovery.nodes.front() == g.node(target).id, step,
                    "recovery route does not start at the scanned node");
        }
      }

      const auto* was = std::get_if<trip::Navigating>(&before);
      const auto* now = std::get_if<trip::Navigating>(&session.state());
      if (was != nullptr && now != nullptr) {
        log.check(now->next_index >= was->next_index, step, "next_index decreased while navigating");
        if (now->next_index > was->next_index && events.size() == 1) {
          const std::size_t k = now->next_index - 1;
          const auto turn = classify_turn(now->route.legs[k - 1], now->route.legs[k]);
          const EventKind expected_kind = turn == TurnDirection::left    ? EventKind::turn_left
                                          : turn == TurnDirection::right ? EventKind::turn_right
                                                                         : EventKind::proceed;
          log.check(events.front().kind == expected_kind, step,
                    "instruction " + std::string(to_string(events.front().kind)) + " disagrees with route geometry");
        }
      }
    }
    result.arrived = std::holds_alternative<trip::Arrived>(session.state());
    if (result.arrived) {
      log.check(session.current_prompt().kind == EventKind::arrival_choice, result.scans,
                "arrival did not end with the return/new trip choice");
    }
  } catch (const std::exception& e) {
    result.violations.push_back(std::string("exception: ") + e.what());
  }
  return result;
}

FuzzReport run_walker_trials(const std::shared_ptr<const MapGraph>& graph, std::size_t trials,
                             std::uint64_t base_seed, const WalkerConfig& config, Execution execution) {
  FuzzReport report;
  report.trials.resize(trials);
  const auto start = std::chrono::steady_clock::now();
  const auto n = static_cast<std::ptrdiff_t>(trials);
  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      report.trials[static_cast<std::size_t>(i)] =
          run_walker_trial(graph, base_seed + static_cast<std::uint64_t>(i), config);
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      report.trials[static_cast<std::size_t>(i)] =
          run_walker_trial(graph, base_seed + static_cast<std::uint64_t>(i), config);
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace wayfind
