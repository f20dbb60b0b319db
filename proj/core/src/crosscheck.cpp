#include "ktn/crosscheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ktn {

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("cosine_similarity: length mismatch");
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa = std::max(sa, std::abs(a[i]));
    sb = std::max(sb, std::abs(b[i]));
  }
  if (sa == 0.0 || sb == 0.0) return 0.0;
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i] / sa;
    const double y = b[i] / sb;
    dot += x * y;
    na += x * x;
    nb += y * y;
  }
  return std::abs(dot) / std::sqrt(na * nb);
}

EnumerationComparison compare_with_enumeration(const Network& net, const SpanningForest& mst,
                                               const SpectrumResult& result, std::size_t cap) {
  if (!result.complete()) throw std::invalid_argument("compare_with_enumeration requires a complete run");
  const std::size_t n = net.state_count();
  const std::vector<VkSolution> optimal = enumerate_all_vk(net, cap);
  const std::vector<double> vk = vk_sequence(result, net, mst);

  EnumerationComparison cmp;
  cmp.state_count = n;
  for (std::size_t k = 1; k <= n; ++k) {
    cmp.max_vk_error = std::max(cmp.max_vk_error, std::abs(vk[k - 1] - optimal[k - 1].value));
    cmp.unique_optima = cmp.unique_optima && optimal[k - 1].unique;
  }
  for (const SpectrumRecord& r : result.records) {
    const double oracle_delta = optimal[r.k - 1].value - optimal[r.k].value;
    cmp.max_delta_error = std::max(cmp.max_delta_error, std::abs(r.delta - oracle_delta));
  }

  std::vector<std::vector<StateIndex>> sinks(n);
  std::vector<std::vector<EdgeIndex>> forests(n);
  for (std::size_t k = 1; k <= n; ++k) {
    sinks[k - 1] = optimal[k - 1].graph.sinks();
    forests[k - 1] = optimal[k - 1].graph.edges(net);
    for (EdgeIndex e : forests[k - 1])
      if (mst.rank_of(e) == kNoRank) cmp.forests_in_mst = false;
  }
  for (std::size_t k = 1; k < n; ++k) {
    cmp.sinks_nested = cmp.sinks_nested && std::includes(sinks[k].begin(), sinks[k].end(), sinks[k - 1].begin(),
                                                         sinks[k - 1].end());
    cmp.forests_nested = cmp.forests_nested && std::includes(forests[k - 1].begin(), forests[k - 1].end(),
                                                             forests[k].begin(), forests[k].end());
  }

  // The algorithm's k-th sink set and forest.
  std::vector<StateIndex> algo_sinks{result.first_sink};
  std::vector<char> cut(net.edge_count(), 0);
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<StateIndex> s = algo_sinks;
    std::sort(s.begin(), s.end());
    std::vector<EdgeIndex> f;
    for (EdgeIndex e : mst.tree_edges())
      if (!cut[e]) f.push_back(e);
    std::sort(f.begin(), f.end());
    if (s != sinks[k - 1] || f != forests[k - 1]) cmp.matches_algorithm = false;
    if (k < n) {
      algo_sinks.push_back(result.records[k - 1].sink);
      cut[result.records[k - 1].cut_edge] = 1;
    }
  }
  return cmp;
}

TemperatureCheck check_temperature(const Network& net, const SpectrumResult& result, double temperature,
                                   const CrossCheckOptions& options) {
  if (!result.complete()) throw std::invalid_argument("check_temperature requires a complete run");
  const std::size_t n = net.state_count();
  const SpectralDecomposition dec = dense_spectrum(net, temperature, options.dense);

  // Records by descending Delta; rank j (0-based) pairs with mode j + 1.
  std::vector<std::size_t> by_delta(result.records.size());
  std::iota(by_delta.begin(), by_delta.end(), std::size_t{0});
  std::stable_sort(by_delta.begin(), by_delta.end(), [&](std::size_t x, std::size_t y) {
    return result.records[x].delta > result.records[y].delta;
  });
  std::vector<std::size_t> mode_of(result.records.size());
  for (std::size_t j = 0; j < by_delta.size(); ++j) mode_of[by_delta[j]] = j + 1;

  auto column = [&](std::size_t mode) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = dec.eigenvectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(mode));
    return v;
  };

  TemperatureCheck out;
  out.temperature = temperature;
  std::vector<StateIndex> earlier_sinks{result.first_sink};
  for (const SpectrumRecord& r : result.records) {
    ModeMatch m;
    m.k = r.k;
    m.delta = r.delta;
    m.delta_gap = std::numeric_limits<double>::infinity();
    for (const SpectrumRecord& other : result.records)
      if (other.k != r.k) m.delta_gap = std::min(m.delta_gap, std::abs(other.delta - r.delta));
    m.gap_guarded = m.delta_gap >= options.gap_factor * temperature;

    std::vector<double> indicator(n, 0.0);
    for (StateIndex i : r.support) indicator[i] = 1.0;
    for (std::size_t mode = 1; mode < n; ++mode) {
      const double c = cosine_similarity(column(mode), indicator);
      if (c > m.vector_cosine) {
        m.vector_cosine = c;
        m.overlap_mode = mode;
      }
    }

    m.rank_mode = mode_of[r.k - 1];
    m.lambda = dec.eigenvalues[m.rank_mode];
    m.exponent_error = std::abs(-temperature * dec.log_eigenvalues[m.rank_mode] - r.delta);
    if (options.committors) {
      const std::vector<double> h = committor(net, temperature, r.sink, earlier_sinks, options.dense);
      m.committor_cosine = cosine_similarity(column(m.overlap_mode), h);
    }
    if (options.exit_rates) {
      const ExitRate rate = exit_rate(net, temperature, r.support, options.dense);
      m.exit_ratio = std::exp(rate.log_rate - dec.log_eigenvalues[m.rank_mode]);
    }
    out.modes.push_back(m);
    earlier_sinks.push_back(r.sink);
  }
  return out;
}

SweepVerdict assess_sweep(std::span<const TemperatureCheck> sweep, const SweepCriteria& criteria) {
  SweepVerdict verdict;
  if (sweep.empty()) return verdict;
  std::vector<const TemperatureCheck*> order;
  for (const TemperatureCheck& t : sweep) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](const TemperatureCheck* x, const TemperatureCheck* y) { return x->temperature > y->temperature; });
  const std::size_t records = order.front()->modes.size();
  for (const TemperatureCheck* t : order)
    if (t->modes.size() != records) throw std::invalid_argument("assess_sweep: sweeps cover different records");

  auto fail = [&](bool& flag, const std::string& what, std::size_t k, double T, double value) {
    flag = false;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: k=%zu T=%g value=%.6g", what.c_str(), k, T, value);
    verdict.failures.emplace_back(buf);
  };

  const double vector_T = criteria.vector_temperature.value_or(order.back()->temperature);
  for (std::size_t k = 0; k < records; ++k) {
    const ModeMatch* previous = nullptr;
    const ModeMatch* previous_exit = nullptr;
    for (const TemperatureCheck* t : order) {
      const ModeMatch& m = t->modes[k];
      const double T = t->temperature;
      if (std::abs(T - vector_T) <= 1e-12 * vector_T) {
        if (!(m.vector_cosine >= criteria.min_cosine)) fail(verdict.eigenvectors, "eigenvector cosine", m.k, T, m.vector_cosine);
        if (!(m.committor_cosine >= criteria.min_cosine))
          fail(verdict.committors, "committor cosine", m.k, T, m.committor_cosine);
      }
      if (!m.gap_guarded) {
        previous = nullptr;
        previous_exit = nullptr;
        continue;
      }
      ++verdict.guarded_pairs;
      if (previous && m.exponent_error > (1.0 + criteria.slack) * previous->exponent_error + criteria.error_floor)
        fail(verdict.asymptotics, "exponent error grew", m.k, T, m.exponent_error);
      previous = &m;
      if (t == order.back() && !(m.exponent_error <= criteria.final_fraction * m.delta))
        fail(verdict.asymptotics, "exponent error above bound", m.k, T, m.exponent_error);
      if (T <= criteria.exit_max_temperature * (1.0 + 1e-12)) {
        if (!(m.exit_ratio >= criteria.exit_low && m.exit_ratio <= criteria.exit_high))
          fail(verdict.exit_rates, "exit ratio out of range", m.k, T, m.exit_ratio);
        if (previous_exit &&
            std::abs(std::log(m.exit_ratio)) > std::abs(std::log(previous_exit->exit_ratio)) + criteria.error_floor)
          fail(verdict.exit_rates, "exit ratio moved away from 1", m.k, T, m.exit_ratio);
        previous_exit = &m;
      }
    }
  }
  return verdict;
}

}  // namespace ktn
