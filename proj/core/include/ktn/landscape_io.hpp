#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ktn/network.hpp"

namespace ktn {

/// Native text format, one record per line:
///
///   # comment
///   M <id> <V> [<k>]
///   E <id1> <id2> <V> [<k>]
///
/// Ids are arbitrary positive integers and become state labels; states are
/// indexed in order of appearance.
Network read_native(std::istream& in, const std::string& source = "<stream>",
                    Connectivity connectivity = Connectivity::require);
Network read_native(const std::filesystem::path& path, Connectivity connectivity = Connectivity::require);

/// Energies are written in shortest round-trip form.
void write_native(std::ostream& out, const Network& net);
void write_native(const std::filesystem::path& path, const Network& net);

/// 1-based field indices.
struct ColumnMap {
  std::size_t min_energy = 1;
  std::size_t ts_energy = 1;
  std::size_t ts_min1 = 4;
  std::size_t ts_min2 = 5;
};

struct PathsampleOptions {
  ColumnMap columns;
  /// Skip malformed lines instead of failing; each skip is listed in the result.
  bool tolerant = false;
  Connectivity connectivity = Connectivity::allow_disconnected;
};

struct PathsampleResult {
  Network network;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_collapsed = 0;
  /// Transition states at or below one of their minima.
  std::size_t invalid_saddles_dropped = 0;
  std::vector<std::string> skipped_lines;
};

/// Reads a min.data / ts.data pair. State i is the i-th minimum line;
/// duplicate transition states between one pair keep the lowest saddle.
PathsampleResult read_pathsample(std::istream& minima, std::istream& transition_states,
                                 const PathsampleOptions& options = {}, const std::string& min_source = "min.data",
                                 const std::string& ts_source = "ts.data");
PathsampleResult read_pathsample(const std::filesystem::path& minima, const std::filesystem::path& transition_states,
                                 const PathsampleOptions& options = {});

/// Drops edges with saddle above `cap` and keeps the component of `anchor`.
ComponentResult truncate(const Network& net, double cap, StateIndex anchor);

}  // namespace ktn
