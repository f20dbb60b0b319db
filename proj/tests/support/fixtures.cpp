#include "fixtures.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "ktn/spectrum.hpp"

#ifndef KTN_TEST_DATA_DIR
#error "KTN_TEST_DATA_DIR must be defined"
#endif

namespace ktn::testing {

std::filesystem::path data_dir() { return KTN_TEST_DATA_DIR; }

Network three_chain(double saddle_23) {
  return Network({{0.0, 1.0, 1}, {1.0, 1.0, 2}, {2.0, 1.0, 3}}, {{0, 1, 3.0, 1.0}, {1, 2, saddle_23, 1.0}});
}

Network seven_well() {
  const double v[] = {0.0, 1.0, 1.5, 2.4, 1.2, 1.8, 3.6};
  std::vector<StateRecord> states;
  for (std::size_t i = 0; i < 7; ++i) states.push_back({v[i], 1.0, i + 1});
  auto e = [](StateIndex a, StateIndex b, double s) { return EdgeRecord{a - 1, b - 1, s, 1.0}; };
  return Network(std::move(states), {e(1, 2, 5.0), e(2, 3, 2.5), e(3, 7, 7.0), e(3, 4, 3.05), e(4, 5, 4.0),
                                     e(5, 6, 3.45), e(1, 3, 5.7), e(2, 5, 4.5), e(6, 7, 7.7)});
}

namespace {

Network draw(std::mt19937_64& rng, std::size_t n, std::size_t extra) {
  std::uniform_real_distribution<double> potential(0.0, 2.0);
  std::uniform_real_distribution<double> height(0.2, 2.5);
  std::vector<StateRecord> states(n);
  for (std::size_t i = 0; i < n; ++i) states[i] = {potential(rng), 1.0, i + 1};

  std::set<std::pair<StateIndex, StateIndex>> pairs;
  for (StateIndex i = 1; i < n; ++i) {
    std::uniform_int_distribution<StateIndex> pick(0, i - 1);
    pairs.emplace(pick(rng), i);
  }
  const std::size_t complete = n * (n - 1) / 2;
  const std::size_t target = std::min(complete, n - 1 + extra);
  std::uniform_int_distribution<StateIndex> any(0, static_cast<StateIndex>(n - 1));
  while (pairs.size() < target) {
    const StateIndex a = any(rng);
    const StateIndex b = any(rng);
    if (a != b) pairs.emplace(std::min(a, b), std::max(a, b));
  }
  std::vector<EdgeRecord> edges;
  for (const auto& [a, b] : pairs)
    edges.push_back({a, b, std::max(states[a].potential, states[b].potential) + height(rng), 1.0});
  return Network(std::move(states), std::move(edges));
}

}  // namespace

Network random_network(std::uint64_t seed, const RandomNetworkSpec& spec) {
  std::mt19937_64 rng(seed);
  for (;;) {
    Network net = draw(rng, spec.states, spec.extra_edges);
    if (validate_genericness(net).generic()) return net;
  }
}

Network random_small_network(std::uint64_t seed, std::size_t states) {
  std::mt19937_64 rng(seed);
  const std::size_t complete = states * (states - 1) / 2;
  std::uniform_int_distribution<std::size_t> extra(0, complete - (states - 1));
  for (;;) {
    Network net = draw(rng, states, extra(rng));
    if (validate_genericness(net).generic()) return net;
  }
}

Network resolved_network(std::uint64_t seed, const ResolvedNetworkSpec& spec) {
  const double T = spec.temperature;
  const std::size_t n = spec.states;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> spacing(5.0 * T, 12.0 * T);
  std::uniform_real_distribution<double> height(0.2, 2.5);
  for (;;) {
    std::vector<double> v(n);
    double level = 0.0;
    for (double& x : v) {
      x = level;
      level += spacing(rng);
    }
    std::shuffle(v.begin(), v.end(), rng);
    std::vector<StateRecord> states(n);
    for (std::size_t i = 0; i < n; ++i) states[i] = {v[i], 1.0, i + 1};

    std::set<std::pair<StateIndex, StateIndex>> pairs;
    for (StateIndex i = 1; i < n; ++i) {
      std::uniform_int_distribution<StateIndex> pick(0, i - 1);
      pairs.emplace(pick(rng), i);
    }
    const std::size_t target = std::min(n * (n - 1) / 2, n - 1 + spec.extra_edges);
    std::uniform_int_distribution<StateIndex> any(0, static_cast<StateIndex>(n - 1));
    while (pairs.size() < target) {
      const StateIndex a = any(rng);
      const StateIndex b = any(rng);
      if (a != b) pairs.emplace(std::min(a, b), std::max(a, b));
    }
    std::vector<EdgeRecord> edges;
    for (const auto& [a, b] : pairs) edges.push_back({a, b, std::max(v[a], v[b]) + height(rng), 1.0});
    Network net(std::move(states), std::move(edges));
    if (!validate_genericness(net).generic()) continue;

    bool resolved = true;
    for (StateIndex i = 0; i < n && resolved; ++i) {
      std::vector<double> saddles;
      for (EdgeIndex e : net.incident(i)) saddles.push_back(net.saddle(e));
      std::sort(saddles.begin(), saddles.end());
      for (std::size_t q = 1; q < saddles.size(); ++q) resolved = resolved && saddles[q] - saddles[q - 1] >= 3.0 * T;
    }
    if (!resolved) continue;
    const SpectrumResult r = run_spectrum(net);
    std::vector<double> deltas;
    for (const SpectrumRecord& rec : r.records) deltas.push_back(rec.delta);
    std::sort(deltas.begin(), deltas.end());
    for (std::size_t q = 1; q < deltas.size(); ++q) resolved = resolved && deltas[q] - deltas[q - 1] >= 5.0 * T;
    if (resolved) return net;
  }
}

Network synthetic_network(std::uint64_t seed, std::size_t states, std::size_t edges) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> potential(0.0, 2.0);
  std::uniform_real_distribution<double> height(0.2, 2.5);
  std::vector<StateRecord> records(states);
  for (std::size_t i = 0; i < states; ++i) records[i] = {potential(rng), 1.0, i + 1};

  std::set<std::pair<StateIndex, StateIndex>> pairs;
  for (StateIndex i = 1; i < states; ++i) {
    std::uniform_int_distribution<StateIndex> pick(i > 8 ? i - 8 : 0, i - 1);
    pairs.emplace(pick(rng), i);
  }
  std::uniform_int_distribution<StateIndex> any(0, static_cast<StateIndex>(states - 1));
  while (pairs.size() < edges) {
    const StateIndex a = any(rng);
    const StateIndex b = any(rng);
    if (a != b) pairs.emplace(std::min(a, b), std::max(a, b));
  }
  std::vector<EdgeRecord> list;
  list.reserve(pairs.size());
  for (const auto& [a, b] : pairs)
    list.push_back({a, b, std::max(records[a].potential, records[b].potential) + height(rng), 1.0});
  return Network(std::move(records), std::move(list));
}

}  // namespace ktn::testing
