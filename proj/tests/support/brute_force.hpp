#pragma once

#include <vector>

#include "ktn/network.hpp"

namespace ktn::testing {

/// Minimum total saddle over every (n-1)-edge subset that spans the network.
double brute_force_mst_cost(const Network& net);

/// Prim's algorithm on the dense saddle matrix; edge ids ascending.
std::vector<EdgeIndex> prim_tree(const Network& net);

/// min over all simple network paths from a to b of the largest saddle on the path.
double brute_force_minimax(const Network& net, StateIndex a, StateIndex b);

}  // namespace ktn::testing
