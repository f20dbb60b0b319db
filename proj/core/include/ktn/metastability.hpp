#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ktn/spectrum.hpp"

namespace ktn {

/// One row of the gap table: records sorted by descending Delta.
struct GapRow {
  std::size_t k = 0;
  double delta = 0.0;
  /// delta minus the next smaller Delta; NaN on the last row.
  double gap = 0.0;
};

struct CycleMetastability {
  std::size_t k = 0;
  StateIndex sink = kNoState;
  double delta = 0.0;
  /// Largest Delta(i) over i in C_k other than the sink; -inf when C_k is a singleton.
  double max_interior_delta = 0.0;
  /// exp(-Delta(i)/T) >= factor * exp(-Delta_k/T) for every interior i.
  bool schuette = false;
};

/// Expected hitting times E_j[tau_A] for every state j, given the target set A.
using HittingTimes = std::function<std::vector<double>(std::span<const StateIndex> targets)>;

struct MetastabilityOptions {
  double temperature = 0.0;
  double factor = 10.0;
  /// Size K of the representative set {s*_1, ..., s*_K}; required for the Bovier ratio.
  std::optional<std::size_t> sink_count;
  HittingTimes hitting_times;
};

struct MetastabilityReport {
  std::vector<GapRow> gaps;
  std::vector<CycleMetastability> cycles;
  /// sup_{i not in M} E_i[tau_M] / inf_{s in M} E_s[tau_{M \ s}].
  std::optional<double> bovier_ratio;
};

/// Delta(i) per state: Delta of the record whose sink is i, +inf for s*_1,
/// NaN for states a thresholded run never reached.
std::vector<double> sink_deltas(const SpectrumResult& result);

MetastabilityReport metastability_report(const SpectrumResult& result, const MetastabilityOptions& options);

}  // namespace ktn
