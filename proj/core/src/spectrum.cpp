#include "ktn/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ktn {

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

std::string tie_message(const Network& net, const GenericnessReport& report) {
  std::ostringstream msg;
  msg << "network violates the genericness assumption";
  if (!report.offending_pairs.empty()) {
    const OffendingPair& p = report.offending_pairs.front();
    msg.precision(17);
    msg << ": " << describe(net, p.first) << " = " << p.first_value << " ties with " << describe(net, p.second)
        << " = " << p.second_value;
  }
  msg << " (" << report.offending_pairs.size() << " tied pair(s)); enable the symbolic tie-break to proceed";
  return msg.str();
}

}  // namespace

const SpectrumRecord& SpectrumResult::record(std::size_t k) const {
  if (k == 0 || k > records.size()) throw std::out_of_range("spectrum record index out of range");
  return records[k - 1];
}

std::vector<std::size_t> SpectrumResult::sink_order() const {
  std::vector<std::size_t> order(state_count, static_cast<std::size_t>(-1));
  if (first_sink != kNoState) order[first_sink] = 0;
  for (const SpectrumRecord& r : records) order[r.sink] = r.k;
  return order;
}

// ---------------------------------------------------------------------------

SpectrumSolver::SpectrumSolver(const Network& net, SpanningForest mst, SpectrumOptions options)
    : net_(&net), forest_(std::move(mst)), options_(options) {
  const std::size_t n = net.state_count();
  if (forest_.state_count() != n || !forest_.spans())
    throw std::invalid_argument("spectrum: the forest must be a spanning tree of the network");

  const GenericnessReport report = validate_genericness(net, {options_.rel_tol});
  if (!report.generic()) {
    if (options_.ties == TieBreak::reject) throw GenericnessError(tie_message(net, report));
    tie_break_used_ = true;
  }

  barrier_.assign(n, kNoRank);
  sink_.assign(n, 0);
  owner_.assign(n, 0);
  stamp_.assign(n, 0);

  first_sink_ = net.global_minimum();
  sink_[first_sink_] = 1;

  // u(i) = largest tree rank on the path from the first sink.
  std::vector<std::pair<StateIndex, TreeRank>> stack{{first_sink_, kNoRank}};
  std::vector<TreeRank> via(n, kNoRank);
  while (!stack.empty()) {
    const auto [i, from] = stack.back();
    stack.pop_back();
    for (const SpanningForest::Link& l : forest_.links(i)) {
      if (l.rank == from) continue;
      const TreeRank carried = barrier_[i] == kNoRank ? l.rank : std::max(barrier_[i], l.rank);
      barrier_[l.neighbor] = carried;
      stack.emplace_back(l.neighbor, l.rank);
    }
  }
  for (StateIndex i = 0; i < n; ++i)
    if (!sink_[i]) push(i);
}

double SpectrumSolver::barrier(StateIndex i) const {
  return sink_.at(i) ? 0.0 : forest_.cost(barrier_[i]);
}

double SpectrumSolver::escape(StateIndex i) const {
  return sink_.at(i) ? 0.0 : escape_for(i, barrier_[i]);
}

void SpectrumSolver::push(StateIndex i) { heap_.push({escape_for(i, barrier_[i]), i, barrier_[i]}); }

void SpectrumSolver::drop_stale() {
  while (!heap_.empty()) {
    const Entry& top = heap_.top();
    if (!sink_[top.state] && barrier_[top.state] == top.barrier) return;
    heap_.pop();
  }
}

bool SpectrumSolver::next_stamp() {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0u);
    epoch_ = 1;
  }
  return true;
}

double SpectrumSolver::next_delta() {
  if (finished()) throw std::logic_error("spectrum: no non-sink state remains");
  drop_stale();
  if (heap_.empty()) throw InternalError("escape heap exhausted before all states became sinks");
  return heap_.top().escape;
}

SpectrumRecord SpectrumSolver::step() {
  if (finished()) throw std::logic_error("spectrum: no non-sink state remains");
  drop_stale();
  if (heap_.empty()) throw InternalError("escape heap exhausted before all states became sinks");

  // Step 1: the new sink maximizes the escape function.
  const Entry top = heap_.top();
  heap_.pop();
  drop_stale();
  if (!heap_.empty() && nearly_equal(heap_.top().escape, top.escape, options_.rel_tol)) {
    if (options_.ties == TieBreak::reject) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "tied escape values " << top.escape << " at states " << net_->label(top.state) << " and "
          << net_->label(heap_.top().state) << "; enable the symbolic tie-break to proceed";
      throw GenericnessError(msg.str());
    }
    tie_break_used_ = true;
  }
  const StateIndex s = top.state;
  const TreeRank cut = barrier_[s];

  // Step 2: the cutting edge is the tree edge realizing u(s). Its endpoints
  // must satisfy u(p) < u(s) and u(q) = u(s).
  if (!forest_.alive(cut)) throw InternalError("barrier of the new sink points to a removed edge");
  const StateIndex a = forest_.endpoint_a(cut);
  const StateIndex b = forest_.endpoint_b(cut);
  auto below = [&](StateIndex x) { return sink_[x] || barrier_[x] < cut; };
  auto level = [&](StateIndex x) { return !sink_[x] && barrier_[x] == cut; };
  StateIndex outer = kNoState;
  StateIndex inner = kNoState;
  if (below(a) && level(b)) {
    outer = a;
    inner = b;
  } else if (below(b) && level(a)) {
    outer = b;
    inner = a;
  } else {
    throw InternalError("no cutting edge satisfies the barrier conditions");
  }

  // Step 3.
  forest_.remove(cut);
  ++steps_;

  SpectrumRecord rec;
  rec.k = steps_;
  rec.sink = s;
  rec.cut_edge = forest_.edge_at(cut);
  rec.cut_outer = outer;
  rec.cut_inner = inner;
  rec.cut_saddle = forest_.cost(cut);
  rec.delta = rec.cut_saddle - net_->potential(s);
  rec.parent = owner_[s];

  // Step 4.
  sink_[s] = 1;
  barrier_[s] = kNoRank;

  // Step 5: sweep the new component, lowering u where the path to s is cheaper.
  next_stamp();
  struct Visit {
    StateIndex state;
    TreeRank from;
    TreeRank carried;
  };
  std::vector<Visit> stack{{s, kNoRank, kNoRank}};
  while (!stack.empty()) {
    const Visit v = stack.back();
    stack.pop_back();
    stamp_[v.state] = epoch_;
    owner_[v.state] = rec.k;
    rec.support.push_back(v.state);
    if (v.state != s) {
      if (sink_[v.state]) throw InternalError("a component holds two sinks");
      if (v.carried > barrier_[v.state]) throw InternalError("barrier update would increase u");
      if (v.carried < barrier_[v.state]) {
        barrier_[v.state] = v.carried;
        push(v.state);
        rec.cycle.push_back(v.state);
      }
    }
    for (const SpanningForest::Link& l : forest_.links(v.state)) {
      if (l.rank == v.from || !forest_.alive(l.rank)) continue;
      stack.push_back({l.neighbor, l.rank, v.carried == kNoRank ? l.rank : std::max(v.carried, l.rank)});
    }
  }
  if (stamp_[inner] != epoch_ || stamp_[outer] == epoch_)
    throw InternalError("cutting edge does not separate the new sink from the older sinks");
  rec.cycle.push_back(s);
  std::sort(rec.support.begin(), rec.support.end());
  std::sort(rec.cycle.begin(), rec.cycle.end());

  // C_k from its closed form; the u-decrease set must agree with it.
  std::vector<StateIndex> closed_form;
  std::vector<std::pair<StateIndex, TreeRank>> walk{{s, kNoRank}};
  while (!walk.empty()) {
    const auto [i, from] = walk.back();
    walk.pop_back();
    if (stamp_[i] == epoch_) closed_form.push_back(i);
    for (const SpanningForest::Link& l : forest_.links(i))
      if (l.rank != from && l.rank < cut) walk.emplace_back(l.neighbor, l.rank);
  }
  std::sort(closed_form.begin(), closed_form.end());
  if (closed_form != rec.cycle)
    throw InternalError("Freidlin cycle from barrier updates disagrees with its closed form at k=" +
                        std::to_string(rec.k));
  return rec;
}

// ---------------------------------------------------------------------------

SpectrumResult run_spectrum(const Network& net, const SpanningForest& mst, const SpectrumOptions& options) {
  SpectrumSolver solver(net, mst, options);
  SpectrumResult result;
  result.state_count = net.state_count();
  result.first_sink = solver.first_sink();
  result.records.reserve(net.state_count() - 1);
  while (!solver.finished()) {
    if (options.min_delta && solver.next_delta() < *options.min_delta) break;
    result.records.push_back(solver.step());
  }
  result.tie_break_used = solver.tie_break_used();
  return result;
}

SpectrumResult run_spectrum(const Network& net, const SpectrumOptions& options) {
  return run_spectrum(net, kruskal(net), options);
}

std::vector<double> asymptotic_eigenvector(const SpectrumResult& result, std::size_t k) {
  if (k == 0) return std::vector<double>(result.state_count, 1.0);
  const SpectrumRecord& rec = result.record(k);
  std::vector<double> phi(result.state_count, 0.0);
  for (StateIndex i : rec.support) phi[i] = 1.0;
  return phi;
}

std::vector<StateIndex> freidlin_cycle(const SpanningForest& mst, StateIndex s, double threshold) {
  if (s >= mst.state_count()) throw std::out_of_range("state index out of range");
  std::vector<StateIndex> members;
  std::vector<std::pair<StateIndex, TreeRank>> stack{{s, kNoRank}};
  while (!stack.empty()) {
    const auto [i, from] = stack.back();
    stack.pop_back();
    members.push_back(i);
    for (const SpanningForest::Link& l : mst.links(i))
      if (l.rank != from && mst.cost(l.rank) < threshold) stack.emplace_back(l.neighbor, l.rank);
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<StateIndex> cycle_of_record(const SpanningForest& mst, const SpectrumResult& result, std::size_t k) {
  const SpectrumRecord& rec = result.record(k);
  const TreeRank cut = mst.rank_of(rec.cut_edge);
  if (cut == kNoRank) throw std::invalid_argument("cycle_of_record: cut edge is not in the given tree");
  std::vector<StateIndex> members;
  std::vector<std::pair<StateIndex, TreeRank>> stack{{rec.sink, kNoRank}};
  while (!stack.empty()) {
    const auto [i, from] = stack.back();
    stack.pop_back();
    if (std::binary_search(rec.support.begin(), rec.support.end(), i)) members.push_back(i);
    for (const SpanningForest::Link& l : mst.links(i))
      if (l.rank != from && l.rank < cut) stack.emplace_back(l.neighbor, l.rank);
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<double> vk_sequence(const SpectrumResult& result, const Network& net, const SpanningForest& mst) {
  if (!result.complete()) throw std::invalid_argument("vk_sequence requires a complete spectrum run");
  const std::size_t n = net.state_count();
  if (mst.state_count() != n || mst.tree_edge_count() + 1 != n)
    throw std::invalid_argument("vk_sequence: tree does not match the network");

  // Sums are taken relative to the global minimum.
  const double base = net.potential(result.first_sink);

  CompensatedSum v1;
  for (TreeRank r = 0; r < mst.tree_edge_count(); ++r) v1.add(mst.cost(r) - base);
  for (StateIndex i = 0; i < n; ++i) v1.add(-(net.potential(i) - base));

  std::vector<double> vk(n);
  CompensatedSum running = v1;
  vk[0] = running.value();
  for (std::size_t k = 1; k < n; ++k) {
    running.add(-result.records[k - 1].delta);
    vk[k] = running.value();
  }

  // Direct evaluation on forest snapshots: edges cut at step j are alive for
  // k <= j, the sink added at step j counts for k >= j + 1.
  std::vector<std::size_t> cut_step(mst.tree_edge_count(), n);
  for (const SpectrumRecord& r : result.records) cut_step[mst.rank_of(r.cut_edge)] = r.k;
  const std::vector<std::size_t> sink_step = result.sink_order();

  std::vector<std::size_t> checkpoints;
  if (n <= 2000) {
    for (std::size_t k = 1; k <= n; ++k) checkpoints.push_back(k);
  } else {
    constexpr std::size_t kSamples = 64;
    for (std::size_t p = 0; p <= kSamples; ++p) checkpoints.push_back(1 + p * (n - 1) / kSamples);
  }
  constexpr double kTolerance = 1e-9;
  for (std::size_t k : checkpoints) {
    CompensatedSum direct;
    for (TreeRank r = 0; r < mst.tree_edge_count(); ++r)
      if (cut_step[r] >= k) direct.add(mst.cost(r) - base);
    for (StateIndex i = 0; i < n; ++i) {
      if (sink_step[i] + 1 > k) direct.add(-(net.potential(i) - base));
    }
    const double d = direct.value();
    if (std::abs(d - vk[k - 1]) > kTolerance)
      throw InternalError("V^(" + std::to_string(k) + ") recurrence disagrees with the forest sum");
  }
  if (std::abs(vk[n - 1]) > kTolerance) throw InternalError("V^(n) does not vanish");
  vk[n - 1] = 0.0;
  return vk;
}

}  // namespace ktn
