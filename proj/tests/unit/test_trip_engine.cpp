#include <gtest/gtest.h>

#include "test_support.hpp"
#include "wayfind/qr_codec.hpp"
#include "wayfind/trip_engine.hpp"

using namespace wayfind;
using wayfind::testing::id;
using wayfind::testing::ids;

namespace {

std::string code(const char* node) { return qr::encode("fcit", node); }

std::vector<EventKind> kinds(const std::vector<InstructionEvent>& events) {
  std::vector<EventKind> out;
  for (const auto& e : events) out.push_back(e.kind);
  return out;
}

TripSession navigating_l1_to_l10() {
  TripSession s(wayfind::testing::shared_demo_map());
  s.on_scan(code("L1"));
  s.select_destination({id("L10"), RouteMode::optimal});
  return s;
}

bool starts_with(const std::string& s, std::string_view prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

TEST(TripEngine, StartsWaitingForAScan) {
  TripSession s(wayfind::testing::shared_demo_map());
  EXPECT_TRUE(std::holds_alternative<trip::AwaitingFirstScan>(s.state()));
  EXPECT_EQ(s.current_prompt().kind, EventKind::scan_prompt);
  EXPECT_EQ(s.current_prompt().text, kInitialPrompt);
  EXPECT_FALSE(s.position().has_value());
  EXPECT_FALSE(s.expected_next().has_value());
  EXPECT_THROW(TripSession(nullptr), std::invalid_argument);
}

TEST(TripEngine, FirstScanAnnouncesLocation) {
  TripSession s(wayfind::testing::shared_demo_map());
  const auto events = s.on_scan(code("L1"));
  ASSERT_EQ(kinds(events), (std::vector{EventKind::announce_location, EventKind::choose_destination}));
  EXPECT_EQ(events[0].text, "You are at Location 1. Main entrance. The stairs are behind you.");
  EXPECT_EQ(s.state(), TripState(trip::AtNode{id("L1")}));
  EXPECT_EQ(s.current_prompt(), events[1]);

  const auto waypoint = s.on_scan(code("S01"));
  EXPECT_EQ(waypoint[0].text, "You are at floor code S01.");
  EXPECT_EQ(s.state(), TripState(trip::AtNode{id("S01")}));
}

TEST(TripEngine, FullWalkthrough) {
  TripSession s(wayfind::testing::shared_demo_map());
  s.on_scan(code("L1"));
  const auto start = s.select_destination({id("L10"), RouteMode::optimal});
  ASSERT_EQ(start.size(), 1u);
  EXPECT_EQ(start[0].kind, EventKind::proceed);
  EXPECT_EQ(start[0].text, "Route to Location 10: 23 m, 1 turn. Walk to floor code S01.");

  const auto& nav = std::get<trip::Navigating>(s.state());
  EXPECT_EQ(nav.route.nodes, ids({"L1", "S01", "L2", "S02", "L4", "S09", "L9", "L10"}));
  EXPECT_EQ(nav.next_index, 1u);
  EXPECT_EQ(nav.last_correct, id("L1"));

  const std::vector<std::pair<const char*, EventKind>> steps{
      {"S01", EventKind::proceed}, {"L2", EventKind::proceed},  {"S02", EventKind::proceed},
      {"L4", EventKind::turn_left}, {"S09", EventKind::proceed}, {"L9", EventKind::proceed}};
  for (const auto& [node, kind] : steps) {
    EXPECT_EQ(s.expected_next(), id(node));
    const auto events = s.on_scan(code(node));
    ASSERT_EQ(events.size(), 1u) << node;
    EXPECT_EQ(events[0].kind, kind) << node << ": " << events[0].text;
    EXPECT_FALSE(events[0].vibrate);
  }
  const auto last = s.on_scan(code("L10"));
  ASSERT_EQ(kinds(last), (std::vector{EventKind::arrived, EventKind::arrival_choice}));
  EXPECT_TRUE(starts_with(last[0].text, kDestinationReachedText));
  EXPECT_EQ(last[1].text, "Double tap to go back to Location 1 where you started, or choose a new destination.");
  EXPECT_EQ(s.state(), TripState(trip::Arrived{id("L10"), id("L1")}));
  EXPECT_EQ(s.current_prompt(), last[1]);
}

TEST(TripEngine, TurnTextFollowsGeometry) {
  auto s = navigating_l1_to_l10();
  s.on_scan(code("S01"));
  s.on_scan(code("L2"));
  EXPECT_EQ(s.on_scan(code("S02"))[0].text, "Continue straight to Location 4.");
  EXPECT_EQ(s.on_scan(code("L4"))[0].text, "Turn left and walk to floor code S09.");
}

TEST(TripEngine, RescanRepeatsPrompt) {
  auto s = navigating_l1_to_l10();
  s.on_scan(code("S01"));
  const auto prompt = s.current_prompt();
  const auto state = s.state();
  for (int i = 0; i < 3; ++i) {
    const auto again = s.on_scan(code("S01"));
    ASSERT_EQ(again.size(), 1u);
    EXPECT_EQ(again[0], prompt);
    EXPECT_EQ(s.state(), state);
  }
  TripSession at(wayfind::testing::shared_demo_map());
  at.on_scan(code("L3"));
  const auto before = at.current_prompt();
  EXPECT_EQ(at.on_scan(code("L3")), std::vector{before});
}

TEST(TripEngine, DeviationAndRecovery) {
  auto s = navigating_l1_to_l10();
  s.on_scan(code("S01"));
  s.on_scan(code("L2"));

  // Step onto the side passage instead of continuing east.
  const auto off = s.on_scan(code("S08"));
  ASSERT_EQ(kinds(off), (std::vector{EventKind::deviated, EventKind::recovery_proceed}));
  EXPECT_TRUE(off[0].vibrate);
  EXPECT_EQ(off[0].text, "You have left your route at floor code S08. Going back to Location 2.");
  EXPECT_EQ(off[1].text, "Walk to Location 2 to get back on your route.");
  const auto& dev = std::get<trip::Deviated>(s.state());
  EXPECT_EQ(dev.recovery.nodes, ids({"S08", "L2"}));
  EXPECT_EQ(dev.resume_index, 3u);
  EXPECT_EQ(s.expected_next(), id("L2"));

  // Keep going the wrong way: the recovery is replanned from the new strip.
  const auto further = s.on_scan(code("L3"));
  ASSERT_EQ(kinds(further), (std::vector{EventKind::deviated, EventKind::recovery_proceed}));
  EXPECT_EQ(std::get<trip::Deviated>(s.state()).recovery.nodes, ids({"L3", "S08", "L2"}));

  const auto back1 = s.on_scan(code("S08"));
  ASSERT_EQ(kinds(back1), std::vector{EventKind::recovery_proceed});
  EXPECT_EQ(back1[0].text, "Continue straight to Location 2 to get back on your route.");

  // Arriving at L2 heading south, the route continues east: a left turn.
  const auto resumed = s.on_scan(code("L2"));
  ASSERT_EQ(kinds(resumed), std::vector{EventKind::turn_left});
  EXPECT_EQ(resumed[0].text, "Back on your route. Turn left and walk to floor code S02.");
  const auto& nav = std::get<trip::Navigating>(s.state());
  EXPECT_EQ(nav.next_index, 3u);
  EXPECT_EQ(nav.last_correct, id("L2"));
  EXPECT_EQ(nav.route.nodes.back(), id("L10"));
}

TEST(TripEngine, DeviationBackwards) {
  auto s = navigating_l1_to_l10();
  s.on_scan(code("S01"));
  const auto back = s.on_scan(code("L1"));
  ASSERT_EQ(kinds(back), (std::vector{EventKind::deviated, EventKind::recovery_proceed}));
  EXPECT_EQ(std::get<trip::Deviated>(s.state()).recovery.nodes, ids({"L1", "S01"}));
  const auto resumed = s.on_scan(code("S01"));
  EXPECT_EQ(kinds(resumed), std::vector{EventKind::proceed});
}

TEST(TripEngine, ScanningLastCorrectSkipsRemainingRecovery) {
  auto s = navigating_l1_to_l10();
  s.on_scan(code("S01"));
  s.on_scan(code("L2"));
  s.on_scan(code("S08"));
  s.on_scan(code("L3"));
  const auto resumed = s.on_scan(code("L2"));
  EXPECT_EQ(resumed.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<trip::Navigating>(s.state()));
  EXPECT_EQ(s.expected_next(), id("S02"));
}

TEST(TripEngine, TurnAroundAfterOvershootingSideways) {
  // P -- Q -- R in a line; the spur Q -- Y leans back towards P.
  std::vector<MapNode> nodes{
      {id("P"), NodeKind::destination, "Room P", {0, 0}, std::nullopt},
      {id("Q"), NodeKind::waypoint, "", {10, 0}, std::nullopt},
      {id("R"), NodeKind::destination, "Room R", {20, 0}, std::nullopt},
      {id("T"), NodeKind::destination, "Room T", {10, -10}, std::nullopt},
      {id("Y"), NodeKind::waypoint, "", {5, 1}, std::nullopt},
  };
  std::vector<MapEdge> edges{{id("P"), id("Q"), 10}, {id("Q"), id("R"), 10}, {id("Q"), id("T"), 10},
                             {id("Q"), id("Y"), std::hypot(5.0, 1.0)}};
  auto g = std::make_shared<const MapGraph>(MapGraph::build("line", nodes, edges));
  TripSession s(g);
  s.on_scan(qr::encode("line", "T"));
  s.select_destination({id("P"), RouteMode::shortest});
  s.on_scan(qr::encode("line", "Q"));
  s.on_scan(qr::encode("line", "Y"));
  const auto resumed = s.on_scan(qr::encode("line", "Q"));
  ASSERT_EQ(resumed.size(), 1u);
  EXPECT_EQ(resumed[0].kind, EventKind::turn_right);
  EXPECT_EQ(resumed[0].text, "Back on your route. Turn around and walk to Room P.");
}

TEST(TripEngine, SkippedStripsFastForward) {
  auto s = navigating_l1_to_l10();
  const auto skip = s.on_scan(code("L2"));
  ASSERT_EQ(skip.size(), 1u);
  EXPECT_EQ(skip[0].kind, EventKind::proceed);
  EXPECT_EQ(skip[0].text, "Skipped 1 floor code. Continue straight to floor code S02.");
  EXPECT_EQ(std::get<trip::Navigating>(s.state()).next_index, 3u);

  const auto turn = s.on_scan(code("L4"));
  EXPECT_EQ(turn[0].kind, EventKind::turn_left);
  EXPECT_TRUE(starts_with(turn[0].text, "Skipped 1 floor code. Turn left"));

  const auto end = s.on_scan(code("L10"));
  ASSERT_EQ(kinds(end), (std::vector{EventKind::arrived, EventKind::arrival_choice}));
  EXPECT_TRUE(starts_with(end[0].text, "Skipped 2 floor codes. Destination Reached."));
}

TEST(TripEngine, ModesChooseDifferentRoutes) {
  TripSession s(wayfind::testing::shared_demo_map());
  s.on_scan(code("L1"));
  const auto optimal = s.select_destination({id("L13"), RouteMode::optimal});
  EXPECT_EQ(optimal[0].text, "Route to Location 13: 45 m, 1 turn. Walk to floor code S01.");
  EXPECT_EQ(std::get<trip::Navigating>(s.state()).route.turns, 1);

  TripSession t(wayfind::testing::shared_demo_map());
  t.on_scan(code("L1"));
  const auto shortest = t.select_destination({id("L13"), RouteMode::shortest});
  EXPECT_EQ(shortest[0].text, "Route to Location 13: 41 m, 2 turns. Walk to floor code S01.");
}

TEST(TripEngine, UnreadableAndForeignCodes) {
  auto s = navigating_l1_to_l10();
  const auto state = s.state();
  const auto prompt = s.current_prompt();

  const auto junk = s.on_scan("hello world");
  ASSERT_EQ(junk.size(), 1u);
  EXPECT_EQ(junk[0].kind, EventKind::error);
  EXPECT_EQ(junk[0].text, kUnreadableText);

  const auto foreign = s.on_scan(qr::encode("library", "L2"));
  EXPECT_EQ(foreign[0].text, kUnknownLocationText);
  const auto missing = s.on_scan(qr::encode("fcit", "Z99"));
  EXPECT_EQ(missing[0].text, kUnknownLocationText);

  EXPECT_EQ(s.state(), state);
  EXPECT_EQ(s.current_prompt(), prompt);
}

TEST(TripEngine, DestinationRules) {
  TripSession s(wayfind::testing::shared_demo_map());
  auto kind_of = [&](const DestinationChoice& c) {
    try {
      s.select_destination(c);
    } catch (const SessionError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "accepted " << c.destination.str();
    return SessionError::Kind::not_at_node;
  };
  EXPECT_EQ(kind_of({id("L2"), RouteMode::shortest}), SessionError::Kind::not_at_node);
  s.on_scan(code("L1"));
  EXPECT_EQ(kind_of({id("Q1"), RouteMode::shortest}), SessionError::Kind::unknown_destination);
  EXPECT_EQ(kind_of({id("S05"), RouteMode::shortest}), SessionError::Kind::not_a_destination);
  s.select_destination({id("L2"), RouteMode::shortest});
  EXPECT_EQ(kind_of({id("L3"), RouteMode::shortest}), SessionError::Kind::not_at_node);
}

TEST(TripEngine, ChoosingCurrentNodeArrivesImmediately) {
  TripSession s(wayfind::testing::shared_demo_map());
  s.on_scan(code("L5"));
  const auto events = s.select_destination({id("L5"), RouteMode::optimal});
  ASSERT_EQ(kinds(events), (std::vector{EventKind::arrived, EventKind::arrival_choice}));
  EXPECT_EQ(s.state(), TripState(trip::Arrived{id("L5"), id("L5")}));
}

TEST(TripEngine, ReturnTrip) {
  TripSession s(wayfind::testing::shared_demo_map());
  s.on_scan(code("S01"));
  s.select_destination({id("L2"), RouteMode::shortest});
  s.on_scan(code("L2"));
  ASSERT_EQ(s.state(), TripState(trip::Arrived{id("L2"), id("S01")}));
  EXPECT_THROW(s.select_destination({id("S02"), RouteMode::shortest}), SessionError);

  const auto back = s.select_destination({id("S01"), RouteMode::shortest});
  EXPECT_EQ(back[0].kind, EventKind::proceed);
  const auto end = s.on_scan(code("S01"));
  EXPECT_EQ(end[0].kind, EventKind::arrived);
  EXPECT_EQ(s.state(), TripState(trip::Arrived{id("S01"), id("L2")}));

  // A new trip from the arrival point.
  s.select_destination({id("L3"), RouteMode::optimal});
  EXPECT_TRUE(std::holds_alternative<trip::Navigating>(s.state()));
}

TEST(TripEngine, ScanElsewhereAfterArrivalRelocates) {
  auto s = navigating_l1_to_l10();
  for (const char* n : {"S01", "L2", "S02", "L4", "S09", "L9", "L10"}) s.on_scan(code(n));
  ASSERT_TRUE(std::holds_alternative<trip::Arrived>(s.state()));
  const auto events = s.on_scan(code("S10"));
  EXPECT_EQ(kinds(events), (std::vector{EventKind::announce_location, EventKind::choose_destination}));
  EXPECT_EQ(s.state(), TripState(trip::AtNode{id("S10")}));
}

TEST(TripEngine, Names) {
  for (int k = 0; k <= static_cast<int>(EventKind::error); ++k) {
    const auto kind = static_cast<EventKind>(k);
    EXPECT_EQ(parse_event_kind(to_string(kind)), kind);
  }
  EXPECT_FALSE(parse_event_kind("dance").has_value());
  EXPECT_EQ(state_name(trip::AwaitingFirstScan{}), "awaiting_first_scan");
  EXPECT_EQ(state_name(trip::AtNode{id("L1")}), "at_node");
  EXPECT_EQ(state_name(trip::Arrived{id("L1"), id("L2")}), "arrived");
}
