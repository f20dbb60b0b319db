#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ktn/network.hpp"

namespace ktn {

// ---------------------------------------------------------------------------
// W-graphs

/// Every non-sink state carries exactly one arrow to a network neighbour;
/// arrows never form a cycle.
struct WGraph {
  /// arrow[i] is the successor of i, kNoState at sinks.
  std::vector<StateIndex> arrow;

  std::vector<StateIndex> sinks() const;
  std::size_t sink_count() const;
  /// Network edges used by the arrows, ascending.
  std::vector<EdgeIndex> edges(const Network& net) const;
  /// Sum over arrows i -> j of V_ij - V_i.
  double cost(const Network& net) const;
  /// Structural check: neighbour arrows only, no cycles.
  bool valid(const Network& net) const;
};

struct VkSolution {
  std::size_t k = 0;
  double value = 0.0;
  WGraph graph;
  /// False when another W-graph attains the minimum within 1e-12.
  bool unique = true;
};

inline constexpr std::size_t kDefaultEnumerationCap = 10;

/// Exhaustive minimum over all W-graphs with k sinks. Throws SizeCapError
/// when n exceeds the cap.
VkSolution enumerate_vk(const Network& net, std::size_t k, std::size_t cap = kDefaultEnumerationCap);

/// The same minimum for every k = 1..n in one enumeration pass; entry k-1 is k.
std::vector<VkSolution> enumerate_all_vk(const Network& net, std::size_t cap = kDefaultEnumerationCap);

// ---------------------------------------------------------------------------
// Dense finite-temperature numerics

enum class Precision {
  /// Extended precision up to 64 states, double above.
  automatic,
  standard,
  extended,
};

struct DenseOptions {
  Precision precision = Precision::automatic;
  std::size_t cap = 2000;
};

struct SpectralDecomposition {
  double temperature = 0.0;
  /// lambda_0 = 0 < lambda_1 <= ... : magnitudes of the spectrum of L.
  std::vector<double> eigenvalues;
  /// ln lambda_k evaluated before rounding to double; -inf for k = 0.
  std::vector<double> log_eigenvalues;
  /// Column k is phi_k; columns are P-orthonormal, phi_0 is constant.
  Eigen::MatrixXd eigenvectors;
  std::vector<double> equilibrium;
};

/// Eigendecomposition through the symmetrization P^{1/2} L P^{-1/2}.
SpectralDecomposition dense_spectrum(const Network& net, double temperature, const DenseOptions& options = {});

/// h = 1 at the source, 0 on the sinks, harmonic elsewhere.
std::vector<double> committor(const Network& net, double temperature, StateIndex source,
                              std::span<const StateIndex> sinks, const DenseOptions& options = {});

/// E_i[tau_A]; zero on A.
std::vector<double> mean_hitting_times(const Network& net, double temperature, std::span<const StateIndex> targets,
                                       const DenseOptions& options = {});

/// p(t) = exp(t L^T) p0 evaluated from the spectral decomposition.
std::vector<double> propagate(const Network& net, double temperature, std::span<const double> p0, double t,
                              const DenseOptions& options = {});

struct ExitRate {
  double rate = 0.0;
  double log_rate = 0.0;
};

/// Smallest eigenvalue magnitude of L restricted to `set` with the
/// complement absorbing.
ExitRate exit_rate(const Network& net, double temperature, std::span<const StateIndex> set,
                   const DenseOptions& options = {});

}  // namespace ktn
