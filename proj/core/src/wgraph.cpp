#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ktn/oracle.hpp"

namespace ktn {

namespace {

constexpr double kTieTolerance = 1e-12;
// Guard on the number of arrow maps visited, independent of the state cap.
constexpr double kMaxLeaves = 2e9;

bool acyclic(std::span<const StateIndex> arrow, std::vector<std::uint8_t>& color) {
  // 0 unvisited, 1 on the current chain, 2 known to reach a sink.
  const std::size_t n = arrow.size();
  std::fill(color.begin(), color.end(), 0);
  for (StateIndex start = 0; start < n; ++start) {
    StateIndex i = start;
    while (color[i] == 0 && arrow[i] != kNoState) {
      color[i] = 1;
      i = arrow[i];
    }
    if (color[i] == 1) return false;
    for (StateIndex j = start; color[j] == 1; j = arrow[j]) color[j] = 2;
    color[i] = 2;
  }
  return true;
}

class Enumerator {
 public:
  Enumerator(const Network& net, std::size_t only_k)
      : net_(net), n_(net.state_count()), only_k_(only_k), arrow_(n_, kNoState), color_(n_, 0),
        best_(n_ + 1) {
    for (std::size_t k = 1; k <= n_; ++k) {
      best_[k].k = k;
      best_[k].value = std::numeric_limits<double>::infinity();
      best_[k].unique = true;
    }
  }

  void run() { visit(0, 0.0, 0); }

  std::vector<VkSolution>& best() { return best_; }

 private:
  void visit(StateIndex i, double cost, std::size_t sinks) {
    if (i == n_) {
      if (only_k_ != 0 && sinks != only_k_) return;
      if (!acyclic(arrow_, color_)) return;
      record(cost, sinks);
      return;
    }
    // Sinks never exceed only_k, and the rest must still be able to reach it.
    if (only_k_ == 0 || sinks < only_k_) {
      arrow_[i] = kNoState;
      visit(i + 1, cost, sinks + 1);
    }
    if (only_k_ != 0 && sinks + (n_ - i) <= only_k_) return;
    for (EdgeIndex e : net_.incident(i)) {
      const StateIndex j = net_.other_end(e, i);
      arrow_[i] = j;
      visit(i + 1, cost + (net_.saddle(e) - net_.potential(i)), sinks);
    }
    arrow_[i] = kNoState;
  }

  void record(double cost, std::size_t sinks) {
    VkSolution& b = best_[sinks];
    if (std::isinf(b.value)) {
      b.value = cost;
      b.graph.arrow = arrow_;
      return;
    }
    const double scale = std::max(1.0, std::abs(b.value));
    if (cost < b.value - kTieTolerance * scale) {
      b.value = cost;
      b.graph.arrow = arrow_;
      b.unique = true;
    } else if (std::abs(cost - b.value) <= kTieTolerance * scale) {
      b.unique = false;
      if (cost < b.value) {
        b.value = cost;
        b.graph.arrow = arrow_;
      }
    }
  }

  const Network& net_;
  std::size_t n_;
  std::size_t only_k_;
  std::vector<StateIndex> arrow_;
  std::vector<std::uint8_t> color_;
  std::vector<VkSolution> best_;
};

void check_size(const Network& net, std::size_t cap) {
  if (net.state_count() > cap)
    throw SizeCapError("W-graph enumeration is capped at " + std::to_string(cap) + " states; network has " +
                       std::to_string(net.state_count()));
  double leaves = 1.0;
  for (StateIndex i = 0; i < net.state_count(); ++i) leaves *= static_cast<double>(net.incident(i).size() + 1);
  if (leaves > kMaxLeaves)
    throw SizeCapError("W-graph enumeration would visit " + std::to_string(leaves) + " arrow maps");
}

}  // namespace

std::vector<StateIndex> WGraph::sinks() const {
  std::vector<StateIndex> out;
  for (StateIndex i = 0; i < arrow.size(); ++i)
    if (arrow[i] == kNoState) out.push_back(i);
  return out;
}

std::size_t WGraph::sink_count() const {
  return static_cast<std::size_t>(std::count(arrow.begin(), arrow.end(), kNoState));
}

std::vector<EdgeIndex> WGraph::edges(const Network& net) const {
  std::vector<EdgeIndex> out;
  for (StateIndex i = 0; i < arrow.size(); ++i) {
    if (arrow[i] == kNoState) continue;
    const auto e = net.find_edge(i, arrow[i]);
    if (!e) throw std::invalid_argument("W-graph arrow does not follow a network edge");
    out.push_back(*e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double WGraph::cost(const Network& net) const {
  double total = 0.0;
  for (StateIndex i = 0; i < arrow.size(); ++i) {
    if (arrow[i] == kNoState) continue;
    const auto e = net.find_edge(i, arrow[i]);
    if (!e) throw std::invalid_argument("W-graph arrow does not follow a network edge");
    total += net.saddle(*e) - net.potential(i);
  }
  return total;
}

bool WGraph::valid(const Network& net) const {
  if (arrow.size() != net.state_count()) return false;
  for (StateIndex i = 0; i < arrow.size(); ++i)
    if (arrow[i] != kNoState && !net.find_edge(i, arrow[i])) return false;
  std::vector<std::uint8_t> color(arrow.size());
  return acyclic(arrow, color);
}

VkSolution enumerate_vk(const Network& net, std::size_t k, std::size_t cap) {
  if (k == 0 || k > net.state_count()) throw std::out_of_range("enumerate_vk: k must lie in [1, n]");
  check_size(net, cap);
  Enumerator en(net, k);
  en.run();
  return std::move(en.best()[k]);
}

std::vector<VkSolution> enumerate_all_vk(const Network& net, std::size_t cap) {
  check_size(net, cap);
  Enumerator en(net, 0);
  en.run();
  std::vector<VkSolution>& best = en.best();
  return {std::make_move_iterator(best.begin() + 1), std::make_move_iterator(best.end())};
}

}  // namespace ktn
