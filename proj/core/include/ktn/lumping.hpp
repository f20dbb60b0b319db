#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "ktn/network.hpp"
#include "ktn/spectrum.hpp"

namespace ktn {

struct LumpedSet {
  std::size_t k = 0;
  StateIndex sink = kNoState;
  double cut_saddle = 0.0;
  double delta = 0.0;
  std::size_t cycle_size = 0;
  std::size_t support_size = 0;
  /// S_k, ascending.
  std::vector<StateIndex> members;
};

/// Lowest saddle joining two super-states. Super-state 0 is the reference
/// singleton, super-state p >= 1 is sets[p - 1].
struct LumpedLink {
  std::size_t from = 0;
  std::size_t to = 0;
  double saddle = 0.0;
  EdgeIndex edge = kNoEdge;
};

struct LumpedNetwork {
  StateIndex reference = kNoState;
  /// Ascending k.
  std::vector<LumpedSet> sets;
  /// Ascending (from, to) with from < to.
  std::vector<LumpedLink> links;
  /// Super-state per state; npos for states outside every chosen set.
  std::vector<std::size_t> super_state_of;

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
};

/// Selects the supports S_k that are maximal among those not containing
/// `reference` and keeps the ones whose cut saddle lies strictly below
/// `barrier_cap` (absolute energy). Requires a complete run.
LumpedNetwork lump(const Network& net, const SpectrumResult& result, double barrier_cap, StateIndex reference);

}  // namespace ktn
