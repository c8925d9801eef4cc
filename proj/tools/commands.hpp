#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace khova::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kPrecondition = 1, kCapExceeded = 2, kParse = 3 };

// Command-line values that take precedence over the job file.
struct Overrides {
  std::optional<std::size_t> cap_pairs;
  std::optional<std::int64_t> cap_degree;
  std::optional<std::size_t> cap_subduction;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> env_seed;  // KHOVA_SEED, used only if neither flag nor job sets one
  bool parallel = false;
  bool timing = false;
};

struct RunResult {
  Json report;
  int exit_code = kOk;
};

const std::vector<std::string>& command_names();

// Parses `job_text` and runs `command`. Never throws: failures become an
// "error" object in the report and the matching exit code.
RunResult run(const std::string& command, const std::string& job_text, const Overrides& overrides);

}  // namespace khova::cli
