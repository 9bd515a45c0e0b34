#include <gtest/gtest.h>

#include "test_support.hpp"
#include "wayfind/walker_sim.hpp"

using namespace wayfind;

TEST(WalkerSim, TrialIsReproducible) {
  const auto g = wayfind::testing::shared_demo_map();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(run_walker_trial(g, seed), run_walker_trial(g, seed));
  }
}

TEST(WalkerSim, ParallelMatchesSerial) {
  const auto g = wayfind::testing::shared_demo_map();
  const WalkerConfig cfg;
  const auto serial = run_walker_trials(g, 200, 1234, cfg, Execution::serial);
  const auto parallel = run_walker_trials(g, 200, 1234, cfg, Execution::parallel);
  ASSERT_EQ(serial.trials.size(), 200u);
  EXPECT_EQ(serial.trials, parallel.trials);
}

TEST(WalkerSim, ObedientWalkerNeverDeviates) {
  const auto g = wayfind::testing::shared_demo_map();
  const auto report = run_walker_trials(g, 100, 7, WalkerConfig{0.0, 10}, Execution::parallel);
  EXPECT_EQ(report.arrived(), 100u);
  EXPECT_EQ(report.deviations(), 0u);
  EXPECT_EQ(report.violations(), 0u);
  for (const auto& t : report.trials) {
    EXPECT_EQ(t.scans, t.route_length);
  }
}

TEST(WalkerSim, WanderingWalkerStillArrives) {
  const auto g = wayfind::testing::shared_demo_map();
  const auto report = run_walker_trials(g, 300, 99, WalkerConfig{0.2, 10}, Execution::parallel);
  EXPECT_EQ(report.arrived(), 300u);
  EXPECT_GT(report.deviations(), 0u);
  for (const auto& t : report.trials) {
    EXPECT_TRUE(t.violations.empty()) << t.violations.front();
    EXPECT_NE(t.src, t.dst);
  }
}

TEST(WalkerSim, RandomLatticeMaps) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto g = std::make_shared<const MapGraph>(wayfind::testing::random_lattice_map(seed, 5, 5));
    if (g->destination_indices().size() < 2) continue;
    const auto report = run_walker_trials(g, 100, seed, WalkerConfig{0.3, 20}, Execution::parallel);
    EXPECT_EQ(report.violations(), 0u) << g->map_id();
    EXPECT_EQ(report.arrived(), 100u) << g->map_id();
  }
}
