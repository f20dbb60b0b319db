#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ktn/network.hpp"
#include "ktn/types.hpp"

namespace ktn {

/// Position of a tree edge in ascending (saddle, smaller id, larger id) order.
using TreeRank = std::uint32_t;
inline constexpr TreeRank kNoRank = std::numeric_limits<TreeRank>::max();

/// A spanning tree of a Network together with the set of edges that have
/// been cut from it. Tree edges are addressed by their rank in ascending
/// cost order, so comparing ranks compares saddle potentials with a
/// deterministic lexicographic tie-break.
class SpanningForest {
 public:
  struct Link {
    StateIndex neighbor;
    TreeRank rank;
  };

  /// Builds a forest from an explicit acyclic set of network edges.
  static SpanningForest from_edges(const Network& net, std::span<const EdgeIndex> edges);

  std::size_t state_count() const noexcept { return links_offsets_.size() - 1; }
  std::size_t tree_edge_count() const noexcept { return edges_.size(); }
  std::size_t alive_count() const noexcept { return alive_count_; }
  /// Components of the forest formed by the alive edges.
  std::size_t component_count() const noexcept { return state_count() - alive_count_; }
  bool spans() const noexcept { return alive_count_ + 1 == state_count(); }

  /// Network edge ids of all tree edges (alive or not) in rank order.
  std::span<const EdgeIndex> tree_edges() const noexcept { return edges_; }
  EdgeIndex edge_at(TreeRank r) const { return edges_.at(r); }
  double cost(TreeRank r) const { return costs_[r]; }
  StateIndex endpoint_a(TreeRank r) const { return ends_[r].first; }
  StateIndex endpoint_b(TreeRank r) const { return ends_[r].second; }
  /// kNoRank when `e` is not a tree edge.
  TreeRank rank_of(EdgeIndex e) const noexcept {
    return e < rank_of_edge_.size() ? rank_of_edge_[e] : kNoRank;
  }

  bool alive(TreeRank r) const { return alive_.at(r) != 0; }
  bool contains_alive(EdgeIndex e) const noexcept {
    const TreeRank r = rank_of(e);
    return r != kNoRank && alive_[r] != 0;
  }

  /// Every tree link at state i, alive or cut.
  std::span<const Link> links(StateIndex i) const {
    return std::span<const Link>(links_).subspan(links_offsets_[i], links_offsets_[i + 1] - links_offsets_[i]);
  }

  /// Marks a tree edge dead. Throws std::logic_error when it already is.
  void remove(TreeRank r);

  /// States reachable from i through alive edges, in discovery order.
  std::vector<StateIndex> component_of(StateIndex i) const;
  /// Component label per state, numbered by the smallest member state.
  std::vector<std::uint32_t> component_labels() const;

  /// Network edge ids of the alive edges, ascending by rank.
  std::vector<EdgeIndex> alive_edges() const;

 private:
  SpanningForest(const Network& net, std::vector<EdgeIndex> sorted_edges);

  std::vector<EdgeIndex> edges_;
  std::vector<double> costs_;
  std::vector<std::pair<StateIndex, StateIndex>> ends_;
  std::vector<TreeRank> rank_of_edge_;
  std::vector<char> alive_;
  std::vector<std::size_t> links_offsets_;
  std::vector<Link> links_;
  std::size_t alive_count_ = 0;
};

/// Orders network edges by (saddle, smaller endpoint, larger endpoint).
bool edge_cost_less(const Network& net, EdgeIndex x, EdgeIndex y);

/// Kruskal's algorithm with union-find (path compression, union by rank).
/// Throws DisconnectedError for a disconnected network.
SpanningForest kruskal(const Network& net);

struct MinimaxPath {
  std::vector<StateIndex> states;
  EdgeIndex argmax_edge = kNoEdge;
  /// -infinity for the single-state path a == b.
  double max_saddle = -std::numeric_limits<double>::infinity();
};

/// The unique forest path between a and b. Throws std::invalid_argument when
/// a and b lie in different components.
MinimaxPath minimax_path(const SpanningForest& forest, StateIndex a, StateIndex b);

struct CutSides {
  /// Component containing the edge's smaller-index endpoint.
  std::vector<StateIndex> side_a;
  std::vector<StateIndex> side_b;
};

/// Removes network edge `e` from the forest and reports the two resulting
/// components. Throws std::logic_error for a dead or non-tree edge.
CutSides cut_edge(SpanningForest& forest, EdgeIndex e);

/// Path optimality: every non-tree edge costs at least as much as every tree
/// edge on the tree path between its endpoints.
bool verify_optimality(const Network& net, const SpanningForest& forest);

}  // namespace ktn
