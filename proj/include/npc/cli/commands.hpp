#pragma once

#include "npc/cli/model.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace npc {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandOptions {
  std::string model_path;
  std::vector<std::string> args;
  bool json = false;
  std::optional<int> degree_bound;
  std::optional<std::string> family;
  std::optional<std::string> volume;
  std::optional<int> degree;
  std::optional<std::string> start;
  std::optional<double> step;
  std::optional<long> steps;
  std::optional<double> tolerance;
  bool timing = false;
};

struct CommandReport {
  /// 0 success, 1 mathematical failure, 2 usage error.
  int exit_code = 0;
  std::string text;
  std::string json;
};

const std::vector<std::string>& command_names();

/// Runs one command; throws UsageError for malformed invocations.
CommandReport run_command(const ModelFile& model, const std::string& command, const CommandOptions& options);

}  // namespace npc
