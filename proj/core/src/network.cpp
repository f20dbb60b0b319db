#include "ktn/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ktn {

namespace {

std::string state_name(const std::vector<StateRecord>& states, StateIndex i) {
  return "state " + std::to_string(states[i].label);
}

bool reaches_all(std::size_t n, std::span<const std::size_t> offsets,
                 std::span<const EdgeIndex> adjacency, std::span<const EdgeRecord> edges) {
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<StateIndex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const StateIndex i = stack.back();
    stack.pop_back();
    for (std::size_t p = offsets[i]; p < offsets[i + 1]; ++p) {
      const EdgeRecord& e = edges[adjacency[p]];
      const StateIndex j = e.a == i ? e.b : e.a;
      if (!seen[j]) {
        seen[j] = 1;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == n;
}

}  // namespace

Network::Network(std::vector<StateRecord> states, std::vector<EdgeRecord> edges,
                 Connectivity connectivity)
    : states_(std::move(states)), edges_(std::move(edges)) {
  const std::size_t n = states_.size();
  if (n == 0) throw NetworkError("network must contain at least one state");
  if (n >= kNoState) throw NetworkError("too many states");
  if (edges_.size() >= kNoEdge) throw NetworkError("too many edges");

  for (StateIndex i = 0; i < n; ++i) {
    StateRecord& s = states_[i];
    if (s.label == 0) s.label = static_cast<std::uint64_t>(i) + 1;
    if (!std::isfinite(s.potential))
      throw NetworkError(state_name(states_, i) + ": potential is not finite");
    if (!(s.prefactor > 0.0) || !std::isfinite(s.prefactor))
      throw NetworkError(state_name(states_, i) + ": prefactor must be positive");
  }

  labels_sorted_.reserve(n);
  for (StateIndex i = 0; i < n; ++i) labels_sorted_.emplace_back(states_[i].label, i);
  std::sort(labels_sorted_.begin(), labels_sorted_.end());
  for (std::size_t p = 1; p < n; ++p)
    if (labels_sorted_[p].first == labels_sorted_[p - 1].first)
      throw NetworkError("duplicate state label " + std::to_string(labels_sorted_[p].first));

  for (EdgeIndex e = 0; e < edges_.size(); ++e) {
    EdgeRecord& r = edges_[e];
    if (r.a >= n || r.b >= n) throw NetworkError("edge references an unknown state");
    if (r.a == r.b) throw NetworkError("self-loop at " + state_name(states_, r.a));
    if (r.a > r.b) std::swap(r.a, r.b);
    const std::string where =
        "edge (" + std::to_string(states_[r.a].label) + "," + std::to_string(states_[r.b].label) + ")";
    if (!std::isfinite(r.saddle)) throw NetworkError(where + ": saddle potential is not finite");
    if (!(r.prefactor > 0.0) || !std::isfinite(r.prefactor))
      throw NetworkError(where + ": prefactor must be positive");
    if (!(r.saddle > std::max(states_[r.a].potential, states_[r.b].potential)))
      throw NetworkError(where + ": saddle potential must exceed both endpoint potentials");
  }

  {
    std::vector<std::pair<StateIndex, StateIndex>> pairs;
    pairs.reserve(edges_.size());
    for (const EdgeRecord& r : edges_) pairs.emplace_back(r.a, r.b);
    std::sort(pairs.begin(), pairs.end());
    const auto dup = std::adjacent_find(pairs.begin(), pairs.end());
    if (dup != pairs.end())
      throw NetworkError("duplicate edge (" + std::to_string(states_[dup->first].label) + "," +
                         std::to_string(states_[dup->second].label) + ")");
  }

  adjacency_offsets_.assign(n + 1, 0);
  for (const EdgeRecord& r : edges_) {
    ++adjacency_offsets_[r.a + 1];
    ++adjacency_offsets_[r.b + 1];
  }
  std::partial_sum(adjacency_offsets_.begin(), adjacency_offsets_.end(), adjacency_offsets_.begin());
  adjacency_.resize(adjacency_offsets_[n]);
  std::vector<std::size_t> fill(adjacency_offsets_.begin(), adjacency_offsets_.end() - 1);
  for (EdgeIndex e = 0; e < edges_.size(); ++e) {
    adjacency_[fill[edges_[e].a]++] = e;
    adjacency_[fill[edges_[e].b]++] = e;
  }

  connected_ = reaches_all(n, adjacency_offsets_, adjacency_, edges_);
  if (connectivity == Connectivity::require && !connected_)
    throw DisconnectedError(
        "network is disconnected; extract a connected component (connected_component / --anchor) first");

  global_minimum_ = 0;
  for (StateIndex i = 1; i < n; ++i)
    if (states_[i].potential < states_[global_minimum_].potential) global_minimum_ = i;
}

std::span<const EdgeIndex> Network::incident(StateIndex i) const {
  if (i >= states_.size()) throw std::out_of_range("state index out of range");
  return std::span<const EdgeIndex>(adjacency_).subspan(
      adjacency_offsets_[i], adjacency_offsets_[i + 1] - adjacency_offsets_[i]);
}

StateIndex Network::other_end(EdgeIndex e, StateIndex from) const {
  const EdgeRecord& r = edges_.at(e);
  if (r.a == from) return r.b;
  if (r.b == from) return r.a;
  throw std::invalid_argument("state is not an endpoint of the edge");
}

std::optional<EdgeIndex> Network::find_edge(StateIndex a, StateIndex b) const {
  if (a >= states_.size() || b >= states_.size()) return std::nullopt;
  const StateIndex from = incident(a).size() <= incident(b).size() ? a : b;
  const StateIndex to = from == a ? b : a;
  for (EdgeIndex e : incident(from))
    if (other_end(e, from) == to) return e;
  return std::nullopt;
}

std::optional<StateIndex> Network::find_label(std::uint64_t label) const {
  const auto it = std::lower_bound(labels_sorted_.begin(), labels_sorted_.end(),
                                   std::make_pair(label, StateIndex{0}));
  if (it == labels_sorted_.end() || it->first != label) return std::nullopt;
  return it->second;
}

void require_connected(const Network& net) {
  if (!net.is_connected())
    throw DisconnectedError(
        "network is disconnected; extract a connected component (connected_component / --anchor) first");
}

ComponentResult connected_component(const Network& net, StateIndex seed) {
  const std::size_t n = net.state_count();
  if (seed >= n) throw std::out_of_range("connected_component: invalid state index");

  std::vector<char> seen(n, 0);
  std::vector<StateIndex> stack{seed};
  seen[seed] = 1;
  while (!stack.empty()) {
    const StateIndex i = stack.back();
    stack.pop_back();
    for (EdgeIndex e : net.incident(i)) {
      const StateIndex j = net.other_end(e, i);
      if (!seen[j]) {
        seen[j] = 1;
        stack.push_back(j);
      }
    }
  }

  std::vector<StateIndex> old_to_new(n, kNoState);
  std::vector<StateIndex> new_to_old;
  std::vector<StateRecord> states;
  for (StateIndex i = 0; i < n; ++i) {
    if (!seen[i]) continue;
    old_to_new[i] = static_cast<StateIndex>(new_to_old.size());
    new_to_old.push_back(i);
    states.push_back(net.state(i));
  }
  std::vector<EdgeRecord> edges;
  for (const EdgeRecord& r : net.edges()) {
    if (!seen[r.a]) continue;
    edges.push_back({old_to_new[r.a], old_to_new[r.b], r.saddle, r.prefactor});
  }
  return {Network(std::move(states), std::move(edges)), std::move(old_to_new), std::move(new_to_old)};
}

// ---------------------------------------------------------------------------

double log_rate(const Network& net, EdgeIndex e, StateIndex from, double temperature) {
  const EdgeRecord& r = net.edge(e);
  const StateRecord& s = net.state(from);
  return std::log(r.prefactor / s.prefactor) - (r.saddle - s.potential) / temperature;
}

GeneratorMatrix build_generator(const Network& net, double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  const std::size_t n = net.state_count();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(n + 2 * net.edge_count());
  for (StateIndex i = 0; i < n; ++i) {
    double out = 0.0;
    for (EdgeIndex e : net.incident(i)) {
      const double rate = std::exp(log_rate(net, e, i, temperature));
      triplets.emplace_back(static_cast<int>(i), static_cast<int>(net.other_end(e, i)), rate);
      out += rate;
    }
    triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), -out);
  }
  GeneratorMatrix g;
  g.n = n;
  g.temperature = temperature;
  g.entries.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  g.entries.setFromTriplets(triplets.begin(), triplets.end());
  g.entries.makeCompressed();
  return g;
}

std::vector<double> equilibrium_distribution(const Network& net, double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  const std::size_t n = net.state_count();
  const double v_min = net.potential(net.global_minimum());
  std::vector<double> log_w(n);
  for (StateIndex i = 0; i < n; ++i)
    log_w[i] = std::log(net.state(i).prefactor) - (net.potential(i) - v_min) / temperature;
  const double top = *std::max_element(log_w.begin(), log_w.end());
  std::vector<double> pi(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = std::exp(log_w[i] - top);
    total += pi[i];
  }
  for (double& p : pi) p /= total;
  return pi;
}

DetailedBalanceCheck check_detailed_balance(const GeneratorMatrix& generator,
                                            std::span<const double> pi, double tol) {
  if (pi.size() != generator.n) throw std::invalid_argument("distribution size mismatch");
  DetailedBalanceCheck check;
  const auto& L = generator.entries;
  for (Eigen::Index i = 0; i < L.outerSize(); ++i) {
    for (decltype(generator.entries)::InnerIterator it(L, i); it; ++it) {
      const Eigen::Index j = it.col();
      if (j <= i) continue;
      const double forward = pi[static_cast<std::size_t>(i)] * it.value();
      const double backward = pi[static_cast<std::size_t>(j)] * L.coeff(j, i);
      const double scale = std::max(forward, backward);
      if (scale == 0.0) continue;
      check.max_violation = std::max(check.max_violation, std::abs(forward - backward) / scale);
    }
  }
  check.balanced = check.max_violation <= tol;
  return check;
}

DetailedBalanceCheck check_detailed_balance(const Network& net, double temperature, double tol) {
  const GeneratorMatrix g = build_generator(net, temperature);
  const std::vector<double> pi = equilibrium_distribution(net, temperature);
  return check_detailed_balance(g, pi, tol);
}

}  // namespace ktn
