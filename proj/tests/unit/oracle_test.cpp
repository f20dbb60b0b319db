#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ktn/crosscheck.hpp"
#include "ktn/oracle.hpp"

namespace ktn {
namespace {

using testing::three_chain;

TEST(WGraphEnumeration, ChainTwoSinks) {
  const VkSolution s = enumerate_vk(three_chain(), 2);
  EXPECT_DOUBLE_EQ(s.value, 2.0);
  EXPECT_EQ(s.graph.sinks(), (std::vector<StateIndex>{0, 2}));
  EXPECT_EQ(s.graph.arrow[1], 0u);
  EXPECT_TRUE(s.unique);
}

TEST(WGraphEnumeration, ChainOneSink) {
  const VkSolution s = enumerate_vk(three_chain(), 1);
  EXPECT_DOUBLE_EQ(s.value, 4.5);
  EXPECT_EQ(s.graph.sinks(), (std::vector<StateIndex>{0}));
  EXPECT_TRUE(s.graph.valid(three_chain()));
  EXPECT_DOUBLE_EQ(s.graph.cost(three_chain()), 4.5);
}

TEST(WGraphEnumeration, AllSinksCostNothing) {
  const std::vector<VkSolution> all = enumerate_all_vk(three_chain());
  ASSERT_EQ(all.size(), 3u);
  EXPECT_DOUBLE_EQ(all[2].value, 0.0);
  EXPECT_DOUBLE_EQ(all[0].value, enumerate_vk(three_chain(), 1).value);
}

TEST(WGraphEnumeration, SizeCap) {
  const Network net = testing::random_network(1, {11, 0});
  EXPECT_THROW(enumerate_vk(net, 1), SizeCapError);
}

TEST(WGraph, RejectsCycles) {
  WGraph g{{1, 0, kNoState}};
  EXPECT_FALSE(g.valid(three_chain()));
}

TEST(DenseSpectrum, ChainAsymptotics) {
  const SpectralDecomposition d = dense_spectrum(three_chain(), 0.05);
  ASSERT_EQ(d.eigenvalues.size(), 3u);
  EXPECT_EQ(d.eigenvalues[0], 0.0);
  EXPECT_NEAR(-0.05 * d.log_eigenvalues[1], 2.5, 0.1);
  EXPECT_NEAR(-0.05 * d.log_eigenvalues[2], 2.0, 0.1);
}

TEST(DenseSpectrum, EigenvectorsArePiOrthonormal) {
  for (Precision p : {Precision::standard, Precision::extended}) {
    const Network net = testing::random_network(5, {6, 4});
    const SpectralDecomposition d = dense_spectrum(net, 0.3, {p, 2000});
    const Eigen::VectorXd pi = Eigen::Map<const Eigen::VectorXd>(d.equilibrium.data(), d.equilibrium.size());
    const Eigen::MatrixXd gram = d.eigenvectors.transpose() * pi.asDiagonal() * d.eigenvectors;
    EXPECT_TRUE(gram.isIdentity(1e-9));
    const Eigen::MatrixXd L = build_generator(net, 0.3).dense();
    for (std::size_t k = 0; k < d.eigenvalues.size(); ++k) {
      const Eigen::VectorXd phi = d.eigenvectors.col(static_cast<Eigen::Index>(k));
      const Eigen::VectorXd residual = L * phi + d.eigenvalues[k] * phi;
      EXPECT_LE(residual.norm(), 1e-9 * std::max(1.0, L.norm()));
    }
  }
}

TEST(DenseSpectrum, PrecisionsAgreeAtModerateTemperature) {
  const Network net = testing::random_network(9, {6, 5});
  const SpectralDecomposition a = dense_spectrum(net, 0.5, {Precision::standard, 2000});
  const SpectralDecomposition b = dense_spectrum(net, 0.5, {Precision::extended, 2000});
  for (std::size_t k = 1; k < a.eigenvalues.size(); ++k)
    EXPECT_NEAR(a.log_eigenvalues[k], b.log_eigenvalues[k], 1e-8);
}

TEST(DenseSpectrum, SizeCap) {
  EXPECT_THROW(dense_spectrum(three_chain(), 0.1, {Precision::standard, 2}), SizeCapError);
}

TEST(Committor, SymmetricChainMidpoint) {
  const Network net({{0.0, 1.0, 1}, {1.0, 1.0, 2}, {0.0, 1.0, 3}}, {{0, 1, 2.0, 1.0}, {1, 2, 2.0, 1.0}});
  const std::vector<StateIndex> sinks{2};
  const std::vector<double> h = committor(net, 0.2, 0, sinks);
  EXPECT_DOUBLE_EQ(h[0], 1.0);
  EXPECT_DOUBLE_EQ(h[2], 0.0);
  EXPECT_NEAR(h[1], 0.5, 1e-12);
}

TEST(Committor, ChainInteriorState) {
  const double T = 0.05;
  const std::vector<StateIndex> sinks{0};
  const std::vector<double> h = committor(three_chain(), T, 2, sinks);
  const double l21 = std::exp(-2.0 / T);
  const double l23 = std::exp(-3.5 / T);
  EXPECT_NEAR(h[1] / (l23 / (l21 + l23)), 1.0, 1e-9);
  EXPECT_LT(h[1], 0.05);
}

TEST(HittingTimes, ArrheniusSlope) {
  const std::vector<StateIndex> target{0};
  const double temps[] = {0.2, 0.1, 0.05};
  double log_time[3];
  for (int i = 0; i < 3; ++i) log_time[i] = std::log(mean_hitting_times(three_chain(), temps[i], target)[2]);
  const double slope = (log_time[2] - log_time[0]) / (1.0 / temps[2] - 1.0 / temps[0]);
  EXPECT_NEAR(slope, 2.5, 0.15 * 2.5);
  EXPECT_EQ(mean_hitting_times(three_chain(), 0.1, target)[0], 0.0);
}

TEST(ExitRate, SingletonSupport) {
  const std::vector<StateIndex> set{2};
  const ExitRate r = exit_rate(three_chain(), 0.05, set);
  EXPECT_NEAR(r.log_rate, -2.5 / 0.05, 1e-10);
  EXPECT_NEAR(r.rate / std::exp(-50.0), 1.0, 1e-10);
}

TEST(Propagate, ConservesMassAndRelaxes) {
  const Network net = testing::random_network(21, {5, 3});
  const std::vector<double> p0{1, 0, 0, 0, 0};
  const std::vector<double> p = propagate(net, 0.5, p0, 0.3);
  double mass = 0.0;
  for (double x : p) {
    mass += x;
    EXPECT_GE(x, -1e-12);
  }
  EXPECT_NEAR(mass, 1.0, 1e-10);
  const std::vector<double> late = propagate(net, 0.5, p0, 1e12);
  const std::vector<double> pi = equilibrium_distribution(net, 0.5);
  for (std::size_t i = 0; i < pi.size(); ++i) EXPECT_NEAR(late[i], pi[i], 1e-9);
}

TEST(Propagate, MatchesMatrixExponentialStep) {
  const Network net = testing::three_chain();
  const double T = 1.0;
  const double dt = 1e-4;
  const std::vector<double> p0{0.2, 0.3, 0.5};
  const std::vector<double> p = propagate(net, T, p0, dt);
  const Eigen::MatrixXd L = build_generator(net, T).dense();
  const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(p0.data(), 3);
  const Eigen::VectorXd euler = v + dt * L.transpose() * v;
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(p[i], euler(i), 1e-8);
}

TEST(CrossCheck, EnumerationAgreesOnSevenWell) {
  const Network net = testing::seven_well();
  const SpanningForest mst = kruskal(net);
  const EnumerationComparison c = compare_with_enumeration(net, mst, run_spectrum(net, mst));
  EXPECT_TRUE(c.passed(1e-12));
  EXPECT_TRUE(c.unique_optima);
}

TEST(CrossCheck, CosineSimilarity) {
  const std::vector<double> a{1, 0, 0};
  const std::vector<double> b{2, 0, 0};
  const std::vector<double> c{0, 1, 0};
  const std::vector<double> zero{0, 0, 0};
  EXPECT_DOUBLE_EQ(cosine_similarity(a, b), 1.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, c), 0.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, zero), 0.0);
}

TEST(CrossCheck, ChainModes) {
  const Network net = three_chain();
  const SpectrumResult r = run_spectrum(net);
  const TemperatureCheck t = check_temperature(net, r, 0.05);
  ASSERT_EQ(t.modes.size(), 2u);
  EXPECT_EQ(t.modes[0].rank_mode, 1u);
  EXPECT_LT(t.modes[0].exponent_error, 0.1);
  EXPECT_GT(t.modes[0].vector_cosine, 0.99);
  EXPECT_NEAR(t.modes[0].exit_ratio, 1.0, 0.5);
}

}  // namespace
}  // namespace ktn

namespace ktn {
namespace {

TEST(CrossCheck, EigenvectorReachesSupportAtLowTemperature) {
  // Two nearly level wells: the mode is still delocalized at T = 0.05.
  const Network net = testing::random_network(9002, {6, 4});
  const SpectrumResult r = run_spectrum(net);
  const double warm = check_temperature(net, r, 0.05).modes[4].vector_cosine;
  const TemperatureCheck cold = check_temperature(net, r, 0.002);
  EXPECT_LT(warm, 0.9);
  for (const ModeMatch& m : cold.modes) {
    EXPECT_GT(m.vector_cosine, 0.99) << "k=" << m.k;
    EXPECT_GT(m.committor_cosine, 0.99) << "k=" << m.k;
  }
}

}  // namespace
}  // namespace ktn
