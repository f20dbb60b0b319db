#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ktn/landscape_io.hpp"

namespace ktn::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kIoError = 2,
  kSizeCapRefusal = 3,
};

struct RunConfig {
  std::string command;
  std::optional<std::filesystem::path> input;
  std::optional<std::pair<std::filesystem::path, std::filesystem::path>> pathsample;
  ColumnMap columns;
  bool tolerant = false;
  std::vector<double> temperatures;
  std::optional<double> threshold;
  /// Energy above the anchor.
  std::optional<double> cap;
  /// Anchor state label; the global minimum when unset.
  std::optional<std::uint64_t> anchor;
  std::string order = "sink";
  bool tie_break = false;
  std::optional<std::filesystem::path> out_dir;
  double rel_tol = 1e-9;
  int verbosity = 0;
};

/// Parses argv-style arguments (without the program name) and runs the
/// command. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace ktn::cli
