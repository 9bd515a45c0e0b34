#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "test_support.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(WAYFIND_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

const std::string kMap = std::string("--map ") + WAYFIND_DEMO_MAP;

}  // namespace

TEST(Cli, Validate) {
  const auto ok = run(std::string("validate ") + WAYFIND_DEMO_MAP);
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("35 nodes"), std::string::npos);
  EXPECT_EQ(run("validate " + wayfind::testing::fixture("dangling_edge.json")).code, 1);
  EXPECT_EQ(run("validate /nonexistent.json").code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("plan " + kMap + " --from L1").code, 2);
  EXPECT_EQ(run("plan " + kMap + " --from L1 --to L2 --mode fastest").code, 2);
  EXPECT_EQ(run("plan " + kMap + " --from L1 --to Q7").code, 2);
  EXPECT_EQ(run("walk " + kMap + " --trace /nonexistent.trace").code, 2);
}

TEST(Cli, PlanJson) {
  const auto r = run("plan " + kMap + " --from L1 --to L13 --mode optimal --json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["turns"], 1);
  EXPECT_NEAR(j["distance"].get<double>(), 45.0, 1e-9);
  EXPECT_EQ(j["nodes"].front(), "L1");
  EXPECT_EQ(j["nodes"].back(), "L13");
  EXPECT_EQ(j["legs"].size(), j["nodes"].size() - 1);
}

TEST(Cli, PlanText) {
  const auto r = run("plan " + kMap + " --from L1 --to L13");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("distance: 40.817 m"), std::string::npos);
  EXPECT_NE(r.out.find("turns: 2"), std::string::npos);
}

TEST(Cli, QrPrintsOnePayloadPerNode) {
  const auto r = run("qr " + kMap);
  ASSERT_EQ(r.code, 0);
  const auto out = lines(r.out);
  EXPECT_EQ(out.size(), wayfind::testing::demo_map().size());
  EXPECT_NE(std::find(out.begin(), out.end(), "BNAV1|fcit|L13|32fb0842"), out.end());
}

TEST(Cli, WalkTrace) {
  const auto r = run("walk " + kMap + " --trace " + WAYFIND_TRACES + "/l1_to_l10_optimal.trace");
  ASSERT_EQ(r.code, 0);
  const auto out = lines(r.out);
  ASSERT_GE(out.size(), 2u);
  EXPECT_EQ(nlohmann::json::parse(out[0])["kind"], "announce_location");
  EXPECT_EQ(nlohmann::json::parse(out[out.size() - 2])["kind"], "arrived");
  EXPECT_EQ(nlohmann::json::parse(out.back())["kind"], "arrival_choice");
}

TEST(Cli, BenchSerial) {
  const auto r = run("bench " + kMap + " --serial");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("272/272 pairs pass"), std::string::npos);
}
