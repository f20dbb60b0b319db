#include <algorithm>

#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "ktn/spectrum.hpp"

namespace ktn {
namespace {

using testing::seven_well;
using testing::three_chain;

std::vector<StateIndex> ids(std::initializer_list<StateIndex> labels) {
  std::vector<StateIndex> out;
  for (StateIndex l : labels) out.push_back(l - 1);
  return out;
}

TEST(SpectrumSolver, InitialBarriersOnChain) {
  const Network net = three_chain();
  SpectrumSolver solver(net, kruskal(net));
  EXPECT_EQ(solver.first_sink(), 0u);
  EXPECT_DOUBLE_EQ(solver.barrier(0), 0.0);
  EXPECT_DOUBLE_EQ(solver.barrier(1), 3.0);
  EXPECT_DOUBLE_EQ(solver.barrier(2), 4.5);
  EXPECT_DOUBLE_EQ(solver.escape(1), 2.0);
  EXPECT_DOUBLE_EQ(solver.escape(2), 2.5);
}

TEST(SpectrumSolver, ChainSteps) {
  const Network net = three_chain();
  SpectrumSolver solver(net, kruskal(net));
  EXPECT_DOUBLE_EQ(solver.next_delta(), 2.5);
  const SpectrumRecord r1 = solver.step();
  EXPECT_EQ(r1.sink, 2u);
  EXPECT_EQ(r1.cut_edge, *net.find_edge(1, 2));
  EXPECT_DOUBLE_EQ(r1.delta, 2.5);
  EXPECT_EQ(r1.support, ids({3}));
  EXPECT_EQ(r1.cycle, ids({3}));
  const SpectrumRecord r2 = solver.step();
  EXPECT_EQ(r2.sink, 1u);
  EXPECT_EQ(r2.cut_edge, *net.find_edge(0, 1));
  EXPECT_DOUBLE_EQ(r2.delta, 2.0);
  EXPECT_EQ(r2.support, ids({2}));
  EXPECT_TRUE(solver.finished());
}

TEST(RunSpectrum, Threshold) {
  SpectrumOptions options;
  options.min_delta = 2.2;
  const SpectrumResult r = run_spectrum(three_chain(), options);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_DOUBLE_EQ(r.records[0].delta, 2.5);
  EXPECT_FALSE(r.complete());
}

TEST(RunSpectrum, RejectsTies) { EXPECT_THROW(run_spectrum(three_chain(4.0)), GenericnessError); }

TEST(RunSpectrum, SymbolicTieBreak) {
  SpectrumOptions options;
  options.ties = TieBreak::symbolic;
  const SpectrumResult a = run_spectrum(three_chain(4.0), options);
  const SpectrumResult b = run_spectrum(three_chain(4.0), options);
  EXPECT_TRUE(a.tie_break_used);
  ASSERT_TRUE(a.complete());
  for (std::size_t k = 1; k <= 2; ++k) EXPECT_EQ(a.record(k).sink, b.record(k).sink);
}

TEST(RunSpectrum, SingleState) {
  const SpectrumResult r = run_spectrum(Network({{0.5, 1.0, 1}}, {}));
  EXPECT_TRUE(r.records.empty());
  EXPECT_TRUE(r.complete());
}

TEST(AsymptoticEigenvector, Chain) {
  const SpectrumResult r = run_spectrum(three_chain());
  EXPECT_EQ(asymptotic_eigenvector(r, 1), (std::vector<double>{0, 0, 1}));
  EXPECT_EQ(asymptotic_eigenvector(r, 0), (std::vector<double>{1, 1, 1}));
}

TEST(FreidlinCycle, ChainThresholds) {
  const Network net = three_chain();
  const SpanningForest mst = kruskal(net);
  EXPECT_EQ(freidlin_cycle(mst, 2, 4.5), ids({3}));
  EXPECT_EQ(freidlin_cycle(mst, 2, 4.6), ids({1, 2, 3}));
}

TEST(VkSequence, Chain) {
  const Network net = three_chain();
  const SpanningForest mst = kruskal(net);
  const std::vector<double> vk = vk_sequence(run_spectrum(net, mst), net, mst);
  ASSERT_EQ(vk.size(), 3u);
  EXPECT_DOUBLE_EQ(vk[0], 4.5);
  EXPECT_DOUBLE_EQ(vk[1], 2.0);
  EXPECT_DOUBLE_EQ(vk[2], 0.0);
}

TEST(SevenWell, Sequences) {
  const Network net = seven_well();
  const SpanningForest mst = kruskal(net);
  const SpectrumResult r = run_spectrum(net, mst);
  ASSERT_TRUE(r.complete());
  EXPECT_EQ(r.first_sink, 0u);
  const std::vector<StateIndex> sinks = ids({2, 7, 5, 6, 3, 4});
  const std::vector<std::pair<StateIndex, StateIndex>> cuts{{1, 2}, {3, 7}, {4, 5}, {5, 6}, {2, 3}, {3, 4}};
  const std::vector<double> deltas{4.0, 3.4, 2.8, 1.65, 1.0, 0.65};
  for (std::size_t k = 1; k <= 6; ++k) {
    const SpectrumRecord& rec = r.record(k);
    EXPECT_EQ(rec.sink, sinks[k - 1]) << "k=" << k;
    EXPECT_EQ(rec.cut_edge, *net.find_edge(cuts[k - 1].first - 1, cuts[k - 1].second - 1)) << "k=" << k;
    EXPECT_NEAR(rec.delta, deltas[k - 1], 1e-12) << "k=" << k;
  }
  EXPECT_EQ(r.record(1).support, ids({2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(r.record(3).support, ids({5, 6}));
  EXPECT_EQ(r.record(5).support, ids({3, 4}));
  EXPECT_EQ(r.record(1).cycle, ids({2, 3, 4, 5, 6}));
  EXPECT_EQ(r.record(5).cycle, ids({3}));
  EXPECT_EQ(asymptotic_eigenvector(r, 3), (std::vector<double>{0, 0, 0, 0, 1, 1, 0}));

  const std::vector<double> vk = vk_sequence(r, net, mst);
  const std::vector<double> expected{13.5, 9.5, 6.1, 3.3, 1.65, 0.65, 0.0};
  for (std::size_t k = 0; k < 7; ++k) EXPECT_NEAR(vk[k], expected[k], 1e-12);
}

class RandomSpectrum : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomSpectrum, StructuralProperties) {
  const Network net = testing::random_network(GetParam(), {12, 10});
  const SpanningForest mst = kruskal(net);
  const SpectrumResult r = run_spectrum(net, mst);
  ASSERT_TRUE(r.complete());
  std::vector<std::size_t> order = r.sink_order();
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i < order.size(); ++i) EXPECT_EQ(order[i], i);

  for (std::size_t k = 1; k <= r.records.size(); ++k) {
    const SpectrumRecord& rec = r.record(k);
    if (k > 1) {
      EXPECT_LE(rec.delta, r.record(k - 1).delta);
    }
    EXPECT_GT(rec.delta, 0.0);
    EXPECT_TRUE(std::binary_search(rec.support.begin(), rec.support.end(), rec.sink));
    EXPECT_TRUE(std::includes(rec.support.begin(), rec.support.end(), rec.cycle.begin(), rec.cycle.end()));
    EXPECT_TRUE(std::binary_search(rec.cycle.begin(), rec.cycle.end(), rec.sink));
    EXPECT_EQ(rec.cycle, cycle_of_record(mst, r, k));
    EXPECT_EQ(rec.cycle, freidlin_cycle(mst, rec.sink, rec.cut_saddle));
    EXPECT_DOUBLE_EQ(rec.delta, rec.cut_saddle - net.potential(rec.sink));
    // Supports form a laminar family, and the parent is the smallest earlier container.
    for (std::size_t j = 1; j < k; ++j) {
      const SpectrumRecord& other = r.record(j);
      std::vector<StateIndex> common;
      std::set_intersection(rec.support.begin(), rec.support.end(), other.support.begin(), other.support.end(),
                            std::back_inserter(common));
      EXPECT_TRUE(common.empty() || common == rec.support) << "k=" << k << " j=" << j;
    }
    if (rec.parent != 0) {
      const SpectrumRecord& p = r.record(rec.parent);
      EXPECT_LT(rec.parent, k);
      EXPECT_TRUE(std::includes(p.support.begin(), p.support.end(), rec.support.begin(), rec.support.end()));
    }
  }
}

TEST_P(RandomSpectrum, BarrierIsMinimaxToSinks) {
  const Network net = testing::random_network(GetParam() + 1000, {9, 8});
  SpectrumSolver solver(net, kruskal(net));
  std::vector<StateIndex> sinks{solver.first_sink()};
  while (!solver.finished()) {
    for (StateIndex i = 0; i < net.state_count(); ++i) {
      if (solver.is_sink(i)) continue;
      double best = std::numeric_limits<double>::infinity();
      for (StateIndex s : sinks) best = std::min(best, testing::brute_force_minimax(net, i, s));
      EXPECT_DOUBLE_EQ(solver.barrier(i), best);
    }
    sinks.push_back(solver.step().sink);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomSpectrum, ::testing::Range<std::uint64_t>(0, 25));

}  // namespace
}  // namespace ktn
