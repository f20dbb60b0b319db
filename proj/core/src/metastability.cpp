#include "ktn/metastability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ktn {

std::vector<double> sink_deltas(const SpectrumResult& result) {
  std::vector<double> delta(result.state_count, std::numeric_limits<double>::quiet_NaN());
  if (result.first_sink != kNoState) delta[result.first_sink] = std::numeric_limits<double>::infinity();
  for (const SpectrumRecord& r : result.records) delta[r.sink] = r.delta;
  return delta;
}

MetastabilityReport metastability_report(const SpectrumResult& result, const MetastabilityOptions& options) {
  if (!(options.temperature > 0.0)) throw std::invalid_argument("metastability_report: temperature must be positive");
  if (!(options.factor >= 1.0)) throw std::invalid_argument("metastability_report: factor must be at least 1");
  MetastabilityReport report;

  for (const SpectrumRecord& r : result.records) report.gaps.push_back({r.k, r.delta, 0.0});
  std::stable_sort(report.gaps.begin(), report.gaps.end(),
                   [](const GapRow& x, const GapRow& y) { return x.delta > y.delta; });
  for (std::size_t p = 0; p < report.gaps.size(); ++p)
    report.gaps[p].gap = p + 1 < report.gaps.size() ? report.gaps[p].delta - report.gaps[p + 1].delta
                                                    : std::numeric_limits<double>::quiet_NaN();

  const std::vector<double> delta = sink_deltas(result);
  const double margin = options.temperature * std::log(options.factor);
  for (const SpectrumRecord& r : result.records) {
    CycleMetastability c{r.k, r.sink, r.delta, -std::numeric_limits<double>::infinity(), true};
    for (StateIndex i : r.cycle) {
      if (i == r.sink) continue;
      // NaN (never a sink in a thresholded run) fails the comparison below.
      c.max_interior_delta = std::isnan(delta[i]) ? delta[i] : std::max(c.max_interior_delta, delta[i]);
      if (!(r.delta - delta[i] >= margin)) c.schuette = false;
    }
    report.cycles.push_back(c);
  }

  if (options.hitting_times && options.sink_count) {
    const std::size_t K = *options.sink_count;
    if (K < 2 || K > result.records.size() + 1)
      throw std::invalid_argument("metastability_report: sink count must lie in [2, records + 1]");
    std::vector<StateIndex> M{result.first_sink};
    for (std::size_t k = 1; k < K; ++k) M.push_back(result.records[k - 1].sink);

    std::vector<char> in_m(result.state_count, 0);
    for (StateIndex s : M) in_m[s] = 1;
    const std::vector<double> to_m = options.hitting_times(M);
    double worst_outside = 0.0;
    for (StateIndex i = 0; i < result.state_count; ++i)
      if (!in_m[i]) worst_outside = std::max(worst_outside, to_m[i]);

    double best_inside = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < M.size(); ++p) {
      std::vector<StateIndex> rest;
      for (std::size_t q = 0; q < M.size(); ++q)
        if (q != p) rest.push_back(M[q]);
      best_inside = std::min(best_inside, options.hitting_times(rest)[M[p]]);
    }
    report.bovier_ratio = worst_outside / best_inside;
  }
  return report;
}

}  // namespace ktn
