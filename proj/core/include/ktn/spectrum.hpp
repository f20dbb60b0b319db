#pragma once

#include <cstddef>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "ktn/mstree.hpp"
#include "ktn/network.hpp"

namespace ktn {

enum class TieBreak {
  /// Refuse degenerate inputs (failed genericness report or tied escape values).
  reject,
  /// Resolve ties deterministically: saddles by (value, smaller id, larger id),
  /// escape values by smaller state index. Results carry tie_break_used.
  symbolic,
};

struct SpectrumOptions {
  TieBreak ties = TieBreak::reject;
  double rel_tol = 1e-9;
  /// Threshold mode: stop before the first record whose Delta falls below this.
  std::optional<double> min_delta;
};

/// One eigenvalue of the zero-temperature asymptotic spectrum.
///
/// lambda_k ~ exp(-delta / T) with eigenvector ~ indicator of `support`.
struct SpectrumRecord {
  std::size_t k = 0;
  /// The new sink s*_{k+1}.
  StateIndex sink = kNoState;
  EdgeIndex cut_edge = kNoEdge;
  /// Endpoint of the cut edge on the side of the older sinks (p*).
  StateIndex cut_outer = kNoState;
  /// Endpoint of the cut edge on the new sink's side (q*).
  StateIndex cut_inner = kNoState;
  double cut_saddle = 0.0;
  double delta = 0.0;
  /// k of the smallest earlier support containing this one; 0 means S_0 = S.
  std::size_t parent = 0;
  /// S_k: post-cut forest component of the new sink, ascending.
  std::vector<StateIndex> support;
  /// C_k: Freidlin cycle of the new sink, ascending.
  std::vector<StateIndex> cycle;
};

struct SpectrumResult {
  std::size_t state_count = 0;
  StateIndex first_sink = kNoState;
  bool tie_break_used = false;
  /// records[k - 1] is record k.
  std::vector<SpectrumRecord> records;

  bool complete() const noexcept { return records.size() + 1 == state_count; }
  const SpectrumRecord& record(std::size_t k) const;
  /// Per state: 0 for s*_1, k for s*_{k+1}, npos if it never became a sink.
  std::vector<std::size_t> sink_order() const;
};

/// Incremental driver for the spanning-tree surgery.
///
/// Barrier values are stored as tree ranks (kNoRank at sinks), so all
/// comparisons between barriers are exact integer comparisons.
class SpectrumSolver {
 public:
  /// Initialization: validates genericness (unless ties are symbolic), picks
  /// the global minimum as the first sink and fills u and v from it.
  SpectrumSolver(const Network& net, SpanningForest mst, SpectrumOptions options = {});

  StateIndex first_sink() const noexcept { return first_sink_; }
  bool finished() const noexcept { return steps_ + 1 >= net_->state_count(); }
  std::size_t steps_done() const noexcept { return steps_; }
  bool tie_break_used() const noexcept { return tie_break_used_; }
  const SpanningForest& forest() const noexcept { return forest_; }

  bool is_sink(StateIndex i) const { return sink_[i] != 0; }
  /// u(i): 0 at sinks, otherwise the smallest over sinks of the largest saddle on the forest path.
  double barrier(StateIndex i) const;
  /// v(i) = u(i) - V_i for non-sinks, 0 at sinks.
  double escape(StateIndex i) const;
  /// Delta of the record the next step() will emit.
  double next_delta();

  /// One iteration: new sink, cutting edge, Delta, S_k, C_k, barrier update.
  SpectrumRecord step();

 private:
  struct Entry {
    double escape;
    StateIndex state;
    TreeRank barrier;
  };
  struct EntryOrder {
    bool operator()(const Entry& x, const Entry& y) const {
      if (x.escape != y.escape) return x.escape < y.escape;
      return x.state > y.state;
    }
  };

  double escape_for(StateIndex i, TreeRank r) const { return forest_.cost(r) - net_->potential(i); }
  void push(StateIndex i);
  void drop_stale();
  bool next_stamp();

  const Network* net_;
  SpanningForest forest_;
  SpectrumOptions options_;
  StateIndex first_sink_ = kNoState;
  std::size_t steps_ = 0;
  bool tie_break_used_ = false;
  std::vector<TreeRank> barrier_;
  std::vector<char> sink_;
  std::vector<std::size_t> owner_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::priority_queue<Entry, std::vector<Entry>, EntryOrder> heap_;
};

/// Full or thresholded run. Builds the MST with kruskal() when none is given.
SpectrumResult run_spectrum(const Network& net, const SpectrumOptions& options = {});
SpectrumResult run_spectrum(const Network& net, const SpanningForest& mst, const SpectrumOptions& options = {});

/// Indicator of S_k; k = 0 gives the all-ones vector.
std::vector<double> asymptotic_eigenvector(const SpectrumResult& result, std::size_t k);

/// States t whose MST path from s has every saddle strictly below `threshold`.
std::vector<StateIndex> freidlin_cycle(const SpanningForest& mst, StateIndex s, double threshold);

/// C_k recomputed from the MST and S_k alone: members of S_k joined to the
/// sink by MST paths whose saddles all lie below the cut edge.
std::vector<StateIndex> cycle_of_record(const SpanningForest& mst, const SpectrumResult& result,
                                        std::size_t k);

/// V^(1), ..., V^(n) from the recurrence V^(k+1) = V^(k) - Delta_k, checked
/// against direct sums over forest snapshots. Throws InternalError when the
/// two disagree by more than 1e-9. Requires a complete run.
std::vector<double> vk_sequence(const SpectrumResult& result, const Network& net, const SpanningForest& mst);

}  // namespace ktn
