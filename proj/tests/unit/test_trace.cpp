#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"
#include "wayfind/json_io.hpp"
#include "wayfind/qr_codec.hpp"
#include "wayfind/trace.hpp"

using namespace wayfind;

namespace {

std::vector<TraceCommand> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_trace(in);
}

std::size_t error_line(const std::string& text) {
  try {
    (void)parse(text);
  } catch (const TraceParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Trace, ParsesCommands) {
  const auto cmds = parse("# walk\n\nscan BNAV1|fcit|L1|2c0ed139\ndest L10 optimal\nprompt\n");
  ASSERT_EQ(cmds.size(), 3u);
  EXPECT_EQ(std::get<ScanCommand>(cmds[0]).payload, "BNAV1|fcit|L1|2c0ed139");
  EXPECT_EQ(std::get<DestCommand>(cmds[1]).node_id, "L10");
  EXPECT_EQ(std::get<DestCommand>(cmds[1]).mode, RouteMode::optimal);
  EXPECT_TRUE(std::holds_alternative<PromptCommand>(cmds[2]));
}

TEST(Trace, ScanKeepsPayloadVerbatim) {
  const auto cmds = parse("scan hello world\n");
  ASSERT_EQ(cmds.size(), 1u);
  EXPECT_EQ(std::get<ScanCommand>(cmds[0]).payload, "hello world");
}

TEST(Trace, ReportsLineOfBadCommand) {
  EXPECT_EQ(error_line("prompt\njump L1\n"), 2u);
  EXPECT_EQ(error_line("# c\n\ndest L1\n"), 3u);
  EXPECT_EQ(error_line("dest L1 fastest\n"), 1u);
  EXPECT_EQ(error_line("dest L1 shortest extra\n"), 1u);
  EXPECT_EQ(error_line("prompt now\n"), 1u);
  EXPECT_EQ(error_line("scan\n"), 1u);
}

TEST(Trace, ApplyTurnsRejectionsIntoErrorEvents) {
  TripSession s(wayfind::testing::shared_demo_map());
  auto events = apply(s, DestCommand{"L10", RouteMode::optimal});
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].kind, EventKind::error);

  events = apply(s, ScanCommand{qr::encode("fcit", "L1")});
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[0].kind, EventKind::announce_location);

  events = apply(s, DestCommand{"S01", RouteMode::optimal});
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].kind, EventKind::error);

  events = apply(s, PromptCommand{});
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].kind, EventKind::choose_destination);
}

TEST(Trace, EventJsonRoundTrip) {
  const InstructionEvent e{EventKind::deviated, "You have left your route.", true};
  const auto j = event_to_json(e);
  EXPECT_EQ(j.dump(), R"({"kind":"deviated","text":"You have left your route.","vibrate":true})");
  EXPECT_EQ(event_from_json(nlohmann::json::parse(j.dump())), e);
  EXPECT_THROW(event_from_json(nlohmann::json::parse(R"({"kind":"dance","text":"","vibrate":false})")),
               std::invalid_argument);
  EXPECT_THROW(event_from_json(nlohmann::json::parse(R"({"kind":"proceed"})")), std::invalid_argument);
}
