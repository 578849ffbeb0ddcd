#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "theta_tools/instance.hpp"

namespace theta::tools {

/// Exit codes of the command-line contract.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitValidation = 2,
  kExitRadiusOverflow = 3,
  kExitNotFound = 4,
};

struct CommandOptions {
  std::optional<std::string> instance_path;
  std::optional<std::string> z;
  std::optional<double> tol;
  std::optional<double> radius_max;
  std::optional<int> bound;
  std::optional<std::string> json_out;
  std::string suite = "all";
};

/// Each command writes its JSON result to `out` (and to opts.json_out when
/// set), diagnostics to `err`, and returns the exit code.
int cmd_eval(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_transform(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_split_basis(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const CommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace theta::tools
