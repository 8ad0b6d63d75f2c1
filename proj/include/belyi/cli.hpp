#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace belyi {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitLimit = 3;

struct CliOutcome {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// Runs the belyi command line on args (without the program name).
CliOutcome run_cli(const std::vector<std::string>& args);

/// Indented key/value rendering of a report; the text output of every command.
std::string render_text(const nlohmann::json& report);

}  // namespace belyi
