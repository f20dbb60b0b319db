#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ktn/network.hpp"

namespace ktn {
namespace {

using testing::three_chain;

TEST(Genericness, ChainWithTiedDifferences) {
  const GenericnessReport r = validate_genericness(three_chain(4.0));
  EXPECT_TRUE(r.distinct_state_potentials);
  EXPECT_TRUE(r.distinct_saddle_potentials);
  EXPECT_FALSE(r.distinct_differences);
  EXPECT_FALSE(r.offending_pairs.empty());
}

TEST(Genericness, GenericChain) {
  const GenericnessReport r = validate_genericness(three_chain());
  EXPECT_TRUE(r.generic());
  EXPECT_TRUE(r.offending_pairs.empty());
}

TEST(Genericness, FlagsAgreeWithOffendingPairs) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Network net = testing::random_network(seed, {6, 4});
    const GenericnessReport r = validate_genericness(net, {1e-9, true});
    EXPECT_EQ(r.generic(), r.offending_pairs.empty());
  }
}

TEST(Genericness, TiedPotentialsNamed) {
  const Network net({{1.0, 1.0, 1}, {1.0, 1.0, 2}}, {{0, 1, 2.0, 1.0}});
  const GenericnessReport r = validate_genericness(net);
  ASSERT_FALSE(r.distinct_state_potentials);
  EXPECT_EQ(describe(net, r.offending_pairs.front().first), "V(1)");
}

TEST(Generator, ChainRate) {
  const Network net = three_chain();
  const auto e = net.find_edge(1, 2);
  ASSERT_TRUE(e);
  EXPECT_DOUBLE_EQ(log_rate(net, *e, 1, 0.5), -7.0);
  const GeneratorMatrix L = build_generator(net, 0.5);
  EXPECT_NEAR(L.dense()(1, 2), std::exp(-7.0), 1e-18);
}

TEST(Generator, RowsSumToZero) {
  const Network net = testing::random_network(3, {7, 6});
  const Eigen::MatrixXd L = build_generator(net, 0.3).dense();
  for (Eigen::Index i = 0; i < L.rows(); ++i) {
    EXPECT_NEAR(L.row(i).sum(), 0.0, 1e-14 * std::abs(L(i, i)));
    for (Eigen::Index j = 0; j < L.cols(); ++j)
      if (i != j) EXPECT_GE(L(i, j), 0.0);
  }
}

TEST(Generator, DetailedBalanceOnChain) {
  const DetailedBalanceCheck c = check_detailed_balance(three_chain(), 0.7, 1e-12);
  EXPECT_TRUE(c.balanced);
}

TEST(Generator, DetailedBalanceOnRandomNetworks) {
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    EXPECT_TRUE(check_detailed_balance(testing::random_network(seed, {7, 5}), 0.1, 1e-12).balanced);
}

TEST(Generator, EquilibriumIsNormalized) {
  const std::vector<double> pi = equilibrium_distribution(three_chain(), 0.25);
  EXPECT_NEAR(pi[0] + pi[1] + pi[2], 1.0, 1e-15);
  EXPECT_NEAR(pi[1] / pi[0], std::exp(-4.0), 1e-15);
}

TEST(Network, RejectsDisconnectedGraphs) {
  EXPECT_THROW(Network({{0.0, 1.0, 1}, {1.0, 1.0, 2}}, {}), DisconnectedError);
  EXPECT_NO_THROW(Network({{0.0, 1.0, 1}, {1.0, 1.0, 2}}, {}, Connectivity::allow_disconnected));
}

TEST(Network, RejectsMalformedEdges) {
  const std::vector<StateRecord> s{{0.0, 1.0, 1}, {1.0, 1.0, 2}};
  EXPECT_THROW(Network(s, {{0, 0, 2.0, 1.0}}), NetworkError);
  EXPECT_THROW(Network(s, {{0, 1, 0.5, 1.0}}), NetworkError);
  EXPECT_THROW(Network(s, {{0, 1, 2.0, 1.0}, {1, 0, 3.0, 1.0}}), NetworkError);
  EXPECT_THROW(Network(s, {{0, 1, 2.0, -1.0}}), NetworkError);
}

TEST(Network, SingleState) {
  const Network net({{0.5, 1.0, 1}}, {});
  EXPECT_EQ(net.state_count(), 1u);
  EXPECT_TRUE(net.is_connected());
}

TEST(ConnectedComponent, TwoTriangles) {
  std::vector<StateRecord> s;
  for (std::uint64_t i = 0; i < 6; ++i) s.push_back({0.1 * static_cast<double>(i), 1.0, i + 1});
  const Network net(s,
                    {{0, 1, 2.0, 1.0}, {1, 2, 2.1, 1.0}, {0, 2, 2.2, 1.0}, {3, 4, 2.3, 1.0}, {4, 5, 2.4, 1.0},
                     {3, 5, 2.5, 1.0}},
                    Connectivity::allow_disconnected);
  const ComponentResult c = connected_component(net, 1);
  EXPECT_EQ(c.network.state_count(), 3u);
  EXPECT_EQ(c.network.edge_count(), 3u);
  EXPECT_EQ(c.old_to_new[4], kNoState);
}

TEST(ConnectedComponent, ChainWithoutUpperEdge) {
  const Network net({{0.0, 1.0, 1}, {1.0, 1.0, 2}, {2.0, 1.0, 3}}, {{0, 1, 3.0, 1.0}},
                    Connectivity::allow_disconnected);
  const ComponentResult c = connected_component(net, 2);
  ASSERT_EQ(c.network.state_count(), 1u);
  EXPECT_EQ(c.network.label(0), 3u);
}

}  // namespace
}  // namespace ktn
