#include "ktn/lumping.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ktn {

LumpedNetwork lump(const Network& net, const SpectrumResult& result, double barrier_cap, StateIndex reference) {
  if (!result.complete()) throw std::invalid_argument("lump requires a complete spectrum run");
  if (result.state_count != net.state_count()) throw std::invalid_argument("lump: result does not match network");
  if (reference >= net.state_count()) throw std::out_of_range("lump: reference out of range");

  // holds_reference[k]: S_k contains the reference; index 0 stands for S_0 = S.
  const std::size_t K = result.records.size();
  std::vector<char> holds_reference(K + 1, 0);
  holds_reference[0] = 1;
  for (const SpectrumRecord& r : result.records)
    holds_reference[r.k] = std::binary_search(r.support.begin(), r.support.end(), reference);

  LumpedNetwork out;
  out.reference = reference;
  out.super_state_of.assign(net.state_count(), LumpedNetwork::npos);
  out.super_state_of[reference] = 0;
  for (const SpectrumRecord& r : result.records) {
    if (holds_reference[r.k] || !holds_reference[r.parent]) continue;
    if (!(r.cut_saddle < barrier_cap)) continue;
    out.sets.push_back({r.k, r.sink, r.cut_saddle, r.delta, r.cycle.size(), r.support.size(), r.support});
    for (StateIndex i : r.support) {
      if (out.super_state_of[i] != LumpedNetwork::npos) throw InternalError("lumped sets overlap");
      out.super_state_of[i] = out.sets.size();
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, LumpedLink> best;
  for (EdgeIndex e = 0; e < net.edge_count(); ++e) {
    const EdgeRecord& r = net.edge(e);
    std::size_t x = out.super_state_of[r.a];
    std::size_t y = out.super_state_of[r.b];
    if (x == LumpedNetwork::npos || y == LumpedNetwork::npos || x == y) continue;
    if (x > y) std::swap(x, y);
    auto [it, fresh] = best.try_emplace({x, y}, LumpedLink{x, y, r.saddle, e});
    if (!fresh && r.saddle < it->second.saddle) it->second = {x, y, r.saddle, e};
  }
  for (const auto& [key, link] : best) out.links.push_back(link);
  return out;
}

}  // namespace ktn
