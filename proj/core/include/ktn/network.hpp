#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "ktn/types.hpp"

namespace ktn {

/// A local minimum. `label` is the user-facing identifier (1-based by default).
struct StateRecord {
  double potential = 0.0;
  double prefactor = 1.0;
  std::uint64_t label = 0;
};

/// A transition state joining two minima. The prefactor is shared by both directions.
struct EdgeRecord {
  StateIndex a = kNoState;
  StateIndex b = kNoState;
  double saddle = 0.0;
  double prefactor = 1.0;
};

enum class Connectivity { require, allow_disconnected };

/// Immutable stochastic network with Arrhenius rates.
///
/// Construction canonicalizes every edge to a < b and rejects self-loops,
/// duplicate pairs, non-finite energies, nonpositive prefactors and saddles
/// that do not lie strictly above both endpoint minima. Unless
/// Connectivity::allow_disconnected is passed, a disconnected graph is
/// rejected with DisconnectedError.
class Network {
 public:
  Network(std::vector<StateRecord> states, std::vector<EdgeRecord> edges,
          Connectivity connectivity = Connectivity::require);

  std::size_t state_count() const noexcept { return states_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const StateRecord& state(StateIndex i) const { return states_.at(i); }
  const EdgeRecord& edge(EdgeIndex e) const { return edges_.at(e); }
  std::span<const StateRecord> states() const noexcept { return states_; }
  std::span<const EdgeRecord> edges() const noexcept { return edges_; }

  double potential(StateIndex i) const { return states_[i].potential; }
  double saddle(EdgeIndex e) const { return edges_[e].saddle; }
  std::uint64_t label(StateIndex i) const { return states_[i].label; }

  /// Edge ids incident to state i, in ascending edge-id order.
  std::span<const EdgeIndex> incident(StateIndex i) const;
  StateIndex other_end(EdgeIndex e, StateIndex from) const;
  std::optional<EdgeIndex> find_edge(StateIndex a, StateIndex b) const;
  std::optional<StateIndex> find_label(std::uint64_t label) const;

  bool is_connected() const noexcept { return connected_; }
  /// Lowest-potential state; ties resolved towards the smaller index.
  StateIndex global_minimum() const noexcept { return global_minimum_; }

 private:
  std::vector<StateRecord> states_;
  std::vector<EdgeRecord> edges_;
  std::vector<std::size_t> adjacency_offsets_;
  std::vector<EdgeIndex> adjacency_;
  std::vector<std::pair<std::uint64_t, StateIndex>> labels_sorted_;
  bool connected_ = false;
  StateIndex global_minimum_ = 0;
};

/// Throws DisconnectedError (with a hint towards connected_component) if net is disconnected.
void require_connected(const Network& net);

struct ComponentResult {
  Network network;
  /// old index -> new index, kNoState when the state was dropped.
  std::vector<StateIndex> old_to_new;
  std::vector<StateIndex> new_to_old;
};

/// Maximal connected induced sub-network containing `seed`. Relative order
/// of the surviving states and edges is preserved; labels are kept.
ComponentResult connected_component(const Network& net, StateIndex seed);

// ---------------------------------------------------------------------------
// Genericness

enum class ValueKind { state_potential, saddle_potential, escape_difference };

/// Where a compared value comes from. For escape differences the value is
/// V(edge) - V(state).
struct ValueLocus {
  ValueKind kind = ValueKind::state_potential;
  StateIndex state = kNoState;
  EdgeIndex edge = kNoEdge;

  friend bool operator==(const ValueLocus&, const ValueLocus&) = default;
};

struct OffendingPair {
  double first_value = 0.0;
  double second_value = 0.0;
  ValueLocus first;
  ValueLocus second;
};

struct GenericnessReport {
  bool distinct_state_potentials = true;
  bool distinct_saddle_potentials = true;
  bool distinct_differences = true;
  std::vector<OffendingPair> offending_pairs;

  bool generic() const noexcept {
    return distinct_state_potentials && distinct_saddle_potentials && distinct_differences;
  }
};

struct GenericnessOptions {
  double rel_tol = 1e-9;
  /// Also compare V_ij - V_k over every (edge, state) combination. O(n m) values.
  bool full_triples = false;
  /// Refuse full_triples above this many compared differences.
  std::size_t full_triple_cap = 20'000'000;
};

/// Two values count as equal when |a - b| <= rel_tol * max(|a|, |b|).
bool nearly_equal(double a, double b, double rel_tol) noexcept;

GenericnessReport validate_genericness(const Network& net, const GenericnessOptions& options = {});
std::string describe(const Network& net, const ValueLocus& locus);

// ---------------------------------------------------------------------------
// Finite-temperature quantities

/// Sparse row-major generator L with L_ij the i -> j rate and zero row sums.
struct GeneratorMatrix {
  std::size_t n = 0;
  double temperature = 0.0;
  Eigen::SparseMatrix<double, Eigen::RowMajor> entries;

  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(entries); }
};

/// ln of the i -> j rate across edge e: ln(k_ij / k_i) - (V_ij - V_i) / T.
double log_rate(const Network& net, EdgeIndex e, StateIndex from, double temperature);

GeneratorMatrix build_generator(const Network& net, double temperature);

/// pi_i proportional to k_i exp(-V_i / T), normalized. Evaluated relative to
/// the minimal exponent so no term overflows.
std::vector<double> equilibrium_distribution(const Network& net, double temperature);

struct DetailedBalanceCheck {
  bool balanced = true;
  double max_violation = 0.0;
};

DetailedBalanceCheck check_detailed_balance(const GeneratorMatrix& generator,
                                            std::span<const double> pi, double tol);
DetailedBalanceCheck check_detailed_balance(const Network& net, double temperature, double tol);

}  // namespace ktn
