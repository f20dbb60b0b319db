#include "ktn/mstree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ktn {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), StateIndex{0});
  }

  StateIndex find(StateIndex x) {
    StateIndex root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const StateIndex next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(StateIndex x, StateIndex y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    return true;
  }

 private:
  std::vector<StateIndex> parent_;
  std::vector<std::uint8_t> rank_;
};

}  // namespace

bool edge_cost_less(const Network& net, EdgeIndex x, EdgeIndex y) {
  const EdgeRecord& a = net.edge(x);
  const EdgeRecord& b = net.edge(y);
  if (a.saddle != b.saddle) return a.saddle < b.saddle;
  if (a.a != b.a) return a.a < b.a;
  return a.b < b.b;
}

SpanningForest::SpanningForest(const Network& net, std::vector<EdgeIndex> sorted_edges)
    : edges_(std::move(sorted_edges)) {
  const std::size_t n = net.state_count();
  costs_.reserve(edges_.size());
  ends_.reserve(edges_.size());
  rank_of_edge_.assign(net.edge_count(), kNoRank);
  links_offsets_.assign(n + 1, 0);
  for (TreeRank r = 0; r < edges_.size(); ++r) {
    const EdgeRecord& e = net.edge(edges_[r]);
    costs_.push_back(e.saddle);
    ends_.emplace_back(e.a, e.b);
    rank_of_edge_[edges_[r]] = r;
    ++links_offsets_[e.a + 1];
    ++links_offsets_[e.b + 1];
  }
  std::partial_sum(links_offsets_.begin(), links_offsets_.end(), links_offsets_.begin());
  links_.resize(links_offsets_[n]);
  std::vector<std::size_t> fill(links_offsets_.begin(), links_offsets_.end() - 1);
  for (TreeRank r = 0; r < edges_.size(); ++r) {
    const auto [a, b] = ends_[r];
    links_[fill[a]++] = {b, r};
    links_[fill[b]++] = {a, r};
  }
  alive_.assign(edges_.size(), 1);
  alive_count_ = edges_.size();
}

SpanningForest SpanningForest::from_edges(const Network& net, std::span<const EdgeIndex> edges) {
  std::vector<EdgeIndex> sorted(edges.begin(), edges.end());
  for (EdgeIndex e : sorted)
    if (e >= net.edge_count()) throw std::invalid_argument("forest edge out of range");
  std::sort(sorted.begin(), sorted.end(), [&](EdgeIndex x, EdgeIndex y) { return edge_cost_less(net, x, y); });
  DisjointSets sets(net.state_count());
  for (EdgeIndex e : sorted)
    if (!sets.unite(net.edge(e).a, net.edge(e).b))
      throw std::invalid_argument("forest edges contain a cycle or a repeated edge");
  return SpanningForest(net, std::move(sorted));
}

void SpanningForest::remove(TreeRank r) {
  if (r >= alive_.size()) throw std::logic_error("not a tree edge");
  if (!alive_[r]) throw std::logic_error("tree edge already cut");
  alive_[r] = 0;
  --alive_count_;
}

std::vector<StateIndex> SpanningForest::component_of(StateIndex i) const {
  if (i >= state_count()) throw std::out_of_range("state index out of range");
  std::vector<StateIndex> members{i};
  // Tree: the parent rank is enough to avoid walking back.
  std::vector<std::pair<StateIndex, TreeRank>> stack{{i, kNoRank}};
  while (!stack.empty()) {
    const auto [s, from] = stack.back();
    stack.pop_back();
    for (const Link& l : links(s)) {
      if (l.rank == from || !alive_[l.rank]) continue;
      members.push_back(l.neighbor);
      stack.emplace_back(l.neighbor, l.rank);
    }
  }
  return members;
}

std::vector<std::uint32_t> SpanningForest::component_labels() const {
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(state_count(), kUnset);
  for (StateIndex i = 0; i < state_count(); ++i) {
    if (label[i] != kUnset) continue;
    for (StateIndex j : component_of(i)) label[j] = i;
  }
  return label;
}

std::vector<EdgeIndex> SpanningForest::alive_edges() const {
  std::vector<EdgeIndex> out;
  out.reserve(alive_count_);
  for (TreeRank r = 0; r < edges_.size(); ++r)
    if (alive_[r]) out.push_back(edges_[r]);
  return out;
}

SpanningForest kruskal(const Network& net) {
  require_connected(net);
  std::vector<EdgeIndex> order(net.edge_count());
  std::iota(order.begin(), order.end(), EdgeIndex{0});
  std::sort(order.begin(), order.end(), [&](EdgeIndex x, EdgeIndex y) { return edge_cost_less(net, x, y); });

  DisjointSets sets(net.state_count());
  std::vector<EdgeIndex> tree;
  tree.reserve(net.state_count() - 1);
  for (EdgeIndex e : order) {
    if (sets.unite(net.edge(e).a, net.edge(e).b)) {
      tree.push_back(e);
      if (tree.size() + 1 == net.state_count()) break;
    }
  }
  return SpanningForest::from_edges(net, tree);
}

MinimaxPath minimax_path(const SpanningForest& forest, StateIndex a, StateIndex b) {
  const std::size_t n = forest.state_count();
  if (a >= n || b >= n) throw std::out_of_range("state index out of range");
  MinimaxPath path;
  if (a == b) {
    path.states = {a};
    return path;
  }

  // Depth-first search from a, remembering the link used to enter each state.
  std::vector<TreeRank> via(n, kNoRank);
  std::vector<StateIndex> parent(n, kNoState);
  std::vector<StateIndex> stack{a};
  parent[a] = a;
  bool found = false;
  while (!stack.empty() && !found) {
    const StateIndex s = stack.back();
    stack.pop_back();
    for (const SpanningForest::Link& l : forest.links(s)) {
      if (!forest.alive(l.rank) || parent[l.neighbor] != kNoState) continue;
      parent[l.neighbor] = s;
      via[l.neighbor] = l.rank;
      if (l.neighbor == b) {
        found = true;
        break;
      }
      stack.push_back(l.neighbor);
    }
  }
  if (!found) throw std::invalid_argument("minimax_path: states lie in different components");

  TreeRank worst = kNoRank;
  for (StateIndex s = b; s != a; s = parent[s]) {
    path.states.push_back(s);
    if (worst == kNoRank || via[s] > worst) worst = via[s];
  }
  path.states.push_back(a);
  std::reverse(path.states.begin(), path.states.end());
  path.argmax_edge = forest.edge_at(worst);
  path.max_saddle = forest.cost(worst);
  return path;
}

CutSides cut_edge(SpanningForest& forest, EdgeIndex e) {
  const TreeRank r = forest.rank_of(e);
  if (r == kNoRank) throw std::logic_error("cut_edge: not a tree edge");
  forest.remove(r);
  return {forest.component_of(forest.endpoint_a(r)), forest.component_of(forest.endpoint_b(r))};
}

bool verify_optimality(const Network& net, const SpanningForest& forest) {
  if (forest.state_count() != net.state_count() || !forest.spans())
    throw std::invalid_argument("verify_optimality: forest does not span the network");

  // Sweep all edges by cost, tree edges first among equals. A non-tree edge
  // violates path optimality exactly when its endpoints are not yet joined by
  // cheaper-or-equal tree edges.
  std::vector<EdgeIndex> order(net.edge_count());
  std::iota(order.begin(), order.end(), EdgeIndex{0});
  std::sort(order.begin(), order.end(), [&](EdgeIndex x, EdgeIndex y) {
    if (net.saddle(x) != net.saddle(y)) return net.saddle(x) < net.saddle(y);
    const bool tx = forest.contains_alive(x);
    const bool ty = forest.contains_alive(y);
    if (tx != ty) return tx;
    return x < y;
  });
  DisjointSets sets(net.state_count());
  for (EdgeIndex e : order) {
    const EdgeRecord& r = net.edge(e);
    if (forest.contains_alive(e)) {
      sets.unite(r.a, r.b);
    } else if (sets.find(r.a) != sets.find(r.b)) {
      return false;
    }
  }
  return true;
}

}  // namespace ktn
