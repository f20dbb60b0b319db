#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ktn/mstree.hpp"
#include "ktn/network.hpp"
#include "ktn/spectrum.hpp"

namespace ktn {

/// Internal node of the disconnectivity graph. Node ids 0..n-1 are the
/// leaves (state indices); internal node p has id n + p.
struct DendrogramNode {
  double level = 0.0;
  std::size_t left = 0;
  std::size_t right = 0;
  EdgeIndex edge = kNoEdge;
  std::size_t size = 0;
};

struct Dendrogram {
  std::size_t leaf_count = 0;
  /// Ascending merge level; the last one is the root.
  std::vector<DendrogramNode> nodes;
  /// States from left to right.
  std::vector<StateIndex> leaf_order;

  std::size_t root() const { return nodes.empty() ? 0 : leaf_count + nodes.size() - 1; }
};

/// States ordered by the step at which they became sinks.
std::vector<StateIndex> order_by_sink(const SpectrumResult& result);
/// States ordered by label.
std::vector<StateIndex> order_by_id(const Network& net);

/// Single-linkage merge tree of the spanning tree edges. Children are placed
/// so that the one holding the earlier leaf in `leaf_order` is on the left.
Dendrogram dendrogram(const Network& net, const SpanningForest& mst, std::span<const StateIndex> leaf_order);

}  // namespace ktn
