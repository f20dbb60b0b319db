#include "ktn/dendrogram.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ktn {

std::vector<StateIndex> order_by_sink(const SpectrumResult& result) {
  if (!result.complete()) throw std::invalid_argument("sink ordering requires a complete spectrum run");
  std::vector<StateIndex> order{result.first_sink};
  for (const SpectrumRecord& r : result.records) order.push_back(r.sink);
  return order;
}

std::vector<StateIndex> order_by_id(const Network& net) {
  std::vector<StateIndex> order(net.state_count());
  std::iota(order.begin(), order.end(), StateIndex{0});
  std::sort(order.begin(), order.end(), [&](StateIndex x, StateIndex y) { return net.label(x) < net.label(y); });
  return order;
}

Dendrogram dendrogram(const Network& net, const SpanningForest& mst, std::span<const StateIndex> leaf_order) {
  const std::size_t n = net.state_count();
  if (mst.state_count() != n || mst.tree_edge_count() + 1 != n)
    throw std::invalid_argument("dendrogram: tree does not span the network");
  if (leaf_order.size() != n) throw std::invalid_argument("dendrogram: leaf order must list every state once");
  std::vector<std::size_t> position(n, n);
  for (std::size_t p = 0; p < n; ++p) {
    if (leaf_order[p] >= n || position[leaf_order[p]] != n)
      throw std::invalid_argument("dendrogram: leaf order must list every state once");
    position[leaf_order[p]] = p;
  }

  Dendrogram d;
  d.leaf_count = n;
  d.leaf_order.assign(leaf_order.begin(), leaf_order.end());

  // Union-find over states; each root remembers its subtree node and leftmost position.
  std::vector<StateIndex> parent(n);
  std::iota(parent.begin(), parent.end(), StateIndex{0});
  std::vector<std::size_t> node(n);
  std::iota(node.begin(), node.end(), std::size_t{0});
  std::vector<std::size_t> leftmost(position);
  std::vector<std::size_t> size(n, 1);
  auto find = [&](StateIndex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  for (TreeRank r = 0; r < mst.tree_edge_count(); ++r) {
    StateIndex a = find(mst.endpoint_a(r));
    StateIndex b = find(mst.endpoint_b(r));
    if (a == b) throw InternalError("spanning tree contains a cycle");
    if (leftmost[a] > leftmost[b]) std::swap(a, b);
    d.nodes.push_back({mst.cost(r), node[a], node[b], mst.edge_at(r), size[a] + size[b]});
    if (size[a] < size[b]) {
      parent[a] = b;
      std::swap(a, b);
    } else {
      parent[b] = a;
    }
    node[a] = n + d.nodes.size() - 1;
    leftmost[a] = std::min(leftmost[a], leftmost[b]);
    size[a] += size[b];
  }
  return d;
}

}  // namespace ktn
