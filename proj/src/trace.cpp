#include "wayfind/trace.hpp"

#include <istream>
#include <sstream>

namespace wayfind {

std::vector<TraceCommand> parse_trace(std::istream& in) {
  std::vector<TraceCommand> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    std::istringstream words(line);
    std::string verb;
    if (!(words >> verb) || verb.front() == '#') {
      continue;
    }
    if (verb == "scan") {
      // The payload is the rest of the line, so it may contain spaces.
      std::string payload;
      std::getline(words >> std::ws, payload);
      while (!payload.empty() && (payload.back() == ' ' || payload.back() == '\t')) {
        payload.pop_back();
      }
      if (payload.empty()) {
        throw TraceParseError(number, "expected: scan <payload>");
      }
      out.emplace_back(ScanCommand{payload});
    } else if (verb == "dest") {
      std::string node;
      std::string mode;
      std::string extra;
      if (!(words >> node >> mode) || (words >> extra)) {
        throw TraceParseError(number, "expected: dest <node_id> <shortest|optimal>");
      }
      const auto parsed = parse_route_mode(mode);
      if (!parsed) {
        throw TraceParseError(number, "unknown route mode '" + mode + "'");
      }
      out.emplace_back(DestCommand{node, *parsed});
    } else if (verb == "prompt") {
      std::string extra;
      if (words >> extra) {
        throw TraceParseError(number, "prompt takes no arguments");
      }
      out.emplace_back(PromptCommand{});
    } else {
      throw TraceParseError(number, "unknown command '" + verb + "'");
    }
  }
  return out;
}

std::vector<InstructionEvent> apply(TripSession& session, const TraceCommand& command) {
  if (const auto* scan = std::get_if<ScanCommand>(&command)) {
    return session.on_scan(scan->payload);
  }
  if (const auto* dest = std::get_if<DestCommand>(&command)) {
    if (!NodeId::is_valid(dest->node_id)) {
      return {{EventKind::error, "invalid destination id '" + dest->node_id + "'", false}};
    }
    try {
      return session.select_destination({NodeId(dest->node_id), dest->mode});
    } catch (const SessionError& e) {
      return {{EventKind::error, e.what(), false}};
    }
  }
  return {session.current_prompt()};
}

}  // namespace wayfind
