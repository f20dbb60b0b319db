#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ktn/network.hpp"

namespace ktn::testing {

std::filesystem::path data_dir();

/// V = (0, 1, 2), V_12 = 3, V_23 = saddle_23.
Network three_chain(double saddle_23 = 4.5);

/// The seven-well landscape of tests/data/seven_well.dat.
Network seven_well();

struct RandomNetworkSpec {
  std::size_t states = 5;
  /// Edges beyond the spanning tree; clipped to the complete graph.
  std::size_t extra_edges = 2;
};

/// Connected network with V ~ U(0, 2) and saddles max(V_i, V_j) + U(0.2, 2.5).
/// Redrawn until it passes the genericness check.
Network random_network(std::uint64_t seed, const RandomNetworkSpec& spec);

/// Like random_network but with an edge count drawn uniformly from [n-1, n(n-1)/2].
Network random_small_network(std::uint64_t seed, std::size_t states);

struct ResolvedNetworkSpec {
  std::size_t states = 5;
  std::size_t extra_edges = 2;
  /// Energy differences are drawn to be resolved at this temperature.
  double temperature = 0.05;
};

/// Random network whose energy differences are large against the given temperature:
/// potential spacings in [5T, 12T], saddles at each state at least 3T apart and
/// Delta values at least 5T apart. Saddle heights follow random_network.
Network resolved_network(std::uint64_t seed, const ResolvedNetworkSpec& spec);

/// Large sparse network for timing runs; genericness is not checked.
Network synthetic_network(std::uint64_t seed, std::size_t states, std::size_t edges);

}  // namespace ktn::testing
