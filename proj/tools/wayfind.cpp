// wayfind: command-line front end for the indoor navigation engine.
//
// Exit codes: 0 ok, 1 validation failure, 2 usage error.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wayfind/http_server.hpp"
#include "wayfind/json_io.hpp"
#include "wayfind/map_model.hpp"
#include "wayfind/nav_service.hpp"
#include "wayfind/pathfinder.hpp"
#include "wayfind/qr_codec.hpp"
#include "wayfind/sweep.hpp"
#include "wayfind/trace.hpp"
#include "wayfind/trip_engine.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

wayfind::service::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server != nullptr) {
    g_server->stop();
  }
}

void print_map_error(const wayfind::MapError& e) { std::cerr << "error: " << e.what() << "\n"; }

int cmd_validate(const std::string& file) {
  std::vector<std::string> warnings;
  try {
    const auto g = wayfind::load_map_file(file, &warnings);
    for (const auto& w : warnings) {
      std::cerr << "warning: " << w << "\n";
    }
    std::cout << "ok: map '" << g.map_id() << "' with " << g.size() << " nodes, " << g.edges().size()
              << " edges, " << g.destination_indices().size() << " destinations\n";
    return kOk;
  } catch (const wayfind::MapError& e) {
    print_map_error(e);
    return kInvalid;
  }
}

int cmd_plan(const std::string& map_file, const std::string& from, const std::string& to,
             const std::string& mode_text, bool as_json) {
  const auto mode = wayfind::parse_route_mode(mode_text);
  if (!mode) {
    std::cerr << "error: --mode must be shortest or optimal\n";
    return kUsage;
  }
  try {
    const auto g = wayfind::load_map_file(map_file);
    if (!g.index_of(from) || !g.index_of(to)) {
      std::cerr << "error: unknown node '" << (g.index_of(from) ? to : from) << "'\n";
      return kUsage;
    }
    const auto route = wayfind::plan_route(g, wayfind::NodeId(from), wayfind::NodeId(to), *mode);
    if (as_json) {
      std::cout << wayfind::route_to_json(route).dump() << "\n";
      return kOk;
    }
    std::cout << "route:";
    for (const auto& n : route.nodes) {
      std::cout << " " << n.str();
    }
    std::cout << "\ndistance: " << std::fixed << std::setprecision(3) << route.distance << " m\n"
              << "turns: " << route.turns << "\n";
    return kOk;
  } catch (const wayfind::MapError& e) {
    print_map_error(e);
    return kInvalid;
  }
}

int cmd_walk(const std::string& map_file, const std::string& trace_file) {
  std::shared_ptr<const wayfind::MapGraph> graph;
  try {
    graph = std::make_shared<const wayfind::MapGraph>(wayfind::load_map_file(map_file));
  } catch (const wayfind::MapError& e) {
    print_map_error(e);
    return kInvalid;
  }
  std::ifstream in(trace_file);
  if (!in) {
    std::cerr << "error: cannot open trace " << trace_file << "\n";
    return kUsage;
  }
  std::vector<wayfind::TraceCommand> commands;
  try {
    commands = wayfind::parse_trace(in);
  } catch (const wayfind::TraceParseError& e) {
    std::cerr << "error: " << trace_file << ": " << e.what() << "\n";
    return kUsage;
  }
  wayfind::TripSession session(graph);
  for (const auto& cmd : commands) {
    for (const auto& event : wayfind::apply(session, cmd)) {
      std::cout << wayfind::event_to_json(event).dump() << "\n";
    }
  }
  return kOk;
}

int cmd_qr(const std::string& map_file) {
  try {
    const auto g = wayfind::load_map_file(map_file);
    for (const auto& n : g.nodes()) {
      std::cout << wayfind::qr::encode(g.map_id(), n.id.str()) << "\n";
    }
    return kOk;
  } catch (const wayfind::MapError& e) {
    print_map_error(e);
    return kInvalid;
  }
}

int cmd_bench(const std::string& map_file, bool serial) {
  try {
    const auto g = wayfind::load_map_file(map_file);
    const auto report =
        wayfind::oracle_sweep(g, serial ? wayfind::Execution::serial : wayfind::Execution::parallel);
    std::cout << std::left << std::setw(8) << "from" << std::setw(8) << "to" << std::right << std::setw(7)
              << "paths" << std::setw(7) << "turns" << std::setw(11) << "distance" << std::setw(7) << "A*"
              << std::setw(10) << "dijkstra" << "  result\n";
    for (const auto& p : report.pairs) {
      std::cout << std::left << std::setw(8) << g.node(p.src).id.str() << std::setw(8) << g.node(p.dst).id.str()
                << std::right << std::setw(7) << p.simple_paths << std::setw(7) << p.optimal_turns << std::setw(11)
                << std::fixed << std::setprecision(3) << p.shortest_distance << std::setw(7) << p.astar_expanded
                << std::setw(10) << p.dijkstra_expanded << "  " << (p.ok() ? "pass" : "FAIL");
      if (!p.error.empty()) {
        std::cout << " (" << p.error << ")";
      }
      std::cout << "\n";
    }
    std::cout << report.pairs.size() - report.failures() << "/" << report.pairs.size() << " pairs pass in "
              << std::setprecision(3) << report.seconds << " s\n";
    return report.ok() ? kOk : kInvalid;
  } catch (const wayfind::MapError& e) {
    print_map_error(e);
    return kInvalid;
  }
}

int cmd_serve(const std::string& maps_dir, const std::string& host, int port) {
  std::optional<wayfind::service::NavService> service;
  try {
    service.emplace(wayfind::service::MapStore::load_directory(maps_dir));
  } catch (const wayfind::MapError& e) {
    print_map_error(e);
    return kInvalid;
  }
  if (service->maps().ids().empty()) {
    std::cerr << "error: no maps found in " << maps_dir << "\n";
    return kInvalid;
  }
  wayfind::service::HttpServer server(*service);
  const int bound = server.bind(host, port);
  if (bound < 0) {
    std::cerr << "error: cannot bind " << host << ":" << port << "\n";
    return kUsage;
  }
  std::cerr << "serving " << service->maps().ids().size() << " map(s) on http://" << host << ":" << bound << "\n";
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  g_server = nullptr;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wayfind - indoor navigation over QR-strip floor maps"};
  app.require_subcommand(1);

  std::string file;
  auto* validate = app.add_subcommand("validate", "Check a map file");
  validate->add_option("file", file, "Map file")->required();

  std::string map_file;
  std::string from;
  std::string to;
  std::string mode = "shortest";
  bool as_json = false;
  auto* plan = app.add_subcommand("plan", "Plan a route between two nodes");
  plan->add_option("--map", map_file, "Map file")->required();
  plan->add_option("--from", from, "Source node id")->required();
  plan->add_option("--to", to, "Destination node id")->required();
  plan->add_option("--mode", mode, "shortest or optimal")->check(CLI::IsMember({"shortest", "optimal"}));
  plan->add_flag("--json", as_json, "Emit the route as JSON");

  std::string trace_file;
  auto* walk = app.add_subcommand("walk", "Replay a scan trace through a trip session");
  walk->add_option("--map", map_file, "Map file")->required();
  walk->add_option("--trace", trace_file, "Trace file")->required();

  auto* qr = app.add_subcommand("qr", "Print the QR payload of every node");
  qr->add_option("--map", map_file, "Map file")->required();

  bool serial = false;
  auto* bench = app.add_subcommand("bench", "All-pairs planner check against the path enumeration");
  bench->add_option("--map", map_file, "Map file")->required();
  bench->add_flag("--serial", serial, "Use the serial reference loop");

  std::string maps_dir;
  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  serve->add_option("--maps", maps_dir, "Directory of map files")->required();
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*validate) return cmd_validate(file);
  if (*plan) return cmd_plan(map_file, from, to, mode, as_json);
  if (*walk) return cmd_walk(map_file, trace_file);
  if (*qr) return cmd_qr(map_file);
  if (*bench) return cmd_bench(map_file, serial);
  if (*serve) return cmd_serve(maps_dir, host, port);
  return kUsage;
}
