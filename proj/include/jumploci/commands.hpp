#pragma once

// Command dispatch shared by the command-line tool and the tests.

#include <optional>
#include <stdexcept>
#include <string>

#include "jumploci/report.hpp"

namespace jumploci {

enum class Format { Json, Text };

struct CommandRequest {
  std::string command;  // compute | betti | dual | realize | crk | oracle
  std::string input;    // session file contents
  std::optional<int> n;
  std::optional<uint64_t> seed;
  std::string chain;  // chain file contents for realize
  std::string point;  // "a1,..,ac" for crk
  int points = 20;    // number of random points for oracle
};

struct CommandResult {
  Json json;
  std::string text;
  /// 0 on success, 2 when a built-in consistency check failed.
  int status = 0;
  /// `output` from the session options, if any.
  std::optional<std::string> output;
};

/// Input problems surface as ParseError, std::invalid_argument or
/// std::domain_error; failed internal cross-checks as RouteDisagreement or
/// std::logic_error.
CommandResult run_command(const CommandRequest& req);

std::string emit(const CommandResult& r, Format format);

}  // namespace jumploci
