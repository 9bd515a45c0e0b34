#pragma once

// Walk trace files: one command per line.
//
//   scan <payload>             (rest of the line)
//   dest <node_id> <shortest|optimal>
//   prompt
//
// Blank lines and lines starting with '#' are ignored.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "wayfind/trip_engine.hpp"

namespace wayfind {

struct ScanCommand {
  std::string payload;
};
struct DestCommand {
  std::string node_id;
  RouteMode mode;
};
struct PromptCommand {};

using TraceCommand = std::variant<ScanCommand, DestCommand, PromptCommand>;

class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

std::vector<TraceCommand> parse_trace(std::istream& in);

/// Applies one command. Destination requests the session rejects come back as
/// a single error event, so a replay never stops half way.
std::vector<InstructionEvent> apply(TripSession& session, const TraceCommand& command);

}  // namespace wayfind
