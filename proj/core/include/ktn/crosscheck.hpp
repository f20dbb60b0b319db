#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ktn/mstree.hpp"
#include "ktn/network.hpp"
#include "ktn/oracle.hpp"
#include "ktn/spectrum.hpp"

namespace ktn {

/// Spanning-tree spectrum against exhaustive W-graph enumeration.
struct EnumerationComparison {
  std::size_t state_count = 0;
  /// max_k |V^(k) recurrence - V^(k) enumerated|.
  double max_vk_error = 0.0;
  /// max_k |Delta_k - (V^(k) - V^(k+1)) enumerated|.
  double max_delta_error = 0.0;
  /// Optimal sink sets nested in k.
  bool sinks_nested = true;
  /// Optimal forests nested in k.
  bool forests_nested = true;
  /// Every optimal forest uses spanning-tree edges only.
  bool forests_in_mst = true;
  /// Optimal sinks and forests equal the algorithm's incremental ones.
  bool matches_algorithm = true;
  bool unique_optima = true;

  bool passed(double tol) const {
    return max_vk_error <= tol && max_delta_error <= tol && sinks_nested && forests_nested && forests_in_mst &&
           matches_algorithm;
  }
};

EnumerationComparison compare_with_enumeration(const Network& net, const SpanningForest& mst,
                                               const SpectrumResult& result,
                                               std::size_t cap = kDefaultEnumerationCap);

struct CrossCheckOptions {
  /// Records whose Delta lies within gap_factor * T of another are not paired by rank.
  double gap_factor = 10.0;
  bool committors = true;
  bool exit_rates = true;
  DenseOptions dense;
};

/// Record k paired with numerical eigenmodes at one temperature.
struct ModeMatch {
  std::size_t k = 0;
  double delta = 0.0;
  /// Smallest |Delta_k - Delta_j| over j != k.
  double delta_gap = 0.0;
  bool gap_guarded = false;
  /// Rank pairing: the j-th smallest nonzero eigenvalue goes with the j-th largest Delta.
  std::size_t rank_mode = 0;
  double lambda = 0.0;
  /// |-T ln lambda - Delta_k| for the rank-paired mode.
  double exponent_error = 0.0;
  /// exit_rate(S_k) / lambda for the rank-paired mode.
  double exit_ratio = 0.0;
  /// Mode with the largest |cosine| to the indicator of S_k.
  std::size_t overlap_mode = 0;
  double vector_cosine = 0.0;
  /// |cosine| between the overlap-matched mode and the committor of s*_{k+1} against earlier sinks.
  double committor_cosine = 0.0;
};

struct TemperatureCheck {
  double temperature = 0.0;
  std::vector<ModeMatch> modes;
};

TemperatureCheck check_temperature(const Network& net, const SpectrumResult& result, double temperature,
                                   const CrossCheckOptions& options = {});

struct SweepCriteria {
  /// err_k may grow by this fraction between consecutive temperatures.
  double slack = 0.05;
  /// Absolute floor below which error growth is ignored.
  double error_floor = 1e-9;
  /// err_k at the lowest temperature must not exceed this fraction of Delta_k.
  double final_fraction = 0.15;
  double min_cosine = 0.99;
  /// Temperature of the eigenvector and committor checks; the lowest swept one when unset.
  std::optional<double> vector_temperature;
  double exit_low = 0.5;
  double exit_high = 2.0;
  /// Exit ratios are checked at and below this temperature.
  double exit_max_temperature = 0.05;
};

struct SweepVerdict {
  bool asymptotics = true;
  bool eigenvectors = true;
  bool committors = true;
  bool exit_rates = true;
  /// (k, T) pairs that passed the gap guard.
  std::size_t guarded_pairs = 0;
  std::vector<std::string> failures;

  bool passed() const { return asymptotics && eigenvectors && committors && exit_rates; }
};

/// Applies the asymptotic criteria to a temperature sweep of one network.
SweepVerdict assess_sweep(std::span<const TemperatureCheck> sweep, const SweepCriteria& criteria = {});

/// |<a, b>| / (|a| |b|); 0 when either vector vanishes.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

}  // namespace ktn
