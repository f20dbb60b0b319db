#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ktn/oracle.hpp"

namespace ktn {
using Extended =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<160>, boost::multiprecision::et_off>;
}  // namespace ktn

namespace Eigen {

template <>
struct NumTraits<ktn::Extended> : GenericNumTraits<ktn::Extended> {
  using R = ktn::Extended;
  using Real = R;
  using NonInteger = R;
  using Nested = R;
  using Literal = R;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 16,
  };
  static R epsilon() { return std::numeric_limits<R>::epsilon(); }
  static R dummy_precision() { return 1000 * epsilon(); }
  static R highest() { return (std::numeric_limits<R>::max)(); }
  static R lowest() { return std::numeric_limits<R>::lowest(); }
  static R infinity() { return std::numeric_limits<R>::infinity(); }
  static R quiet_NaN() { return std::numeric_limits<R>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<R>::digits10; }
};

}  // namespace Eigen

namespace ktn {

namespace {

constexpr std::size_t kAutomaticExtendedLimit = 64;

template <class R>
using Matrix = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>;
template <class R>
using Vector = Eigen::Matrix<R, Eigen::Dynamic, 1>;

void check_inputs(const Network& net, double temperature, const DenseOptions& options) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  if (net.state_count() > options.cap)
    throw SizeCapError("dense oracle is capped at " + std::to_string(options.cap) + " states; network has " +
                       std::to_string(net.state_count()));
}

bool use_extended(const Network& net, const DenseOptions& options) {
  switch (options.precision) {
    case Precision::standard:
      return false;
    case Precision::extended:
      return true;
    case Precision::automatic:
      break;
  }
  return net.state_count() <= kAutomaticExtendedLimit;
}

// Dense generator and its scale vector. Exponents are formed in R from the
// stored double inputs.
template <class R>
struct DenseModel {
  Matrix<R> L;
  /// pi^{1/2}, normalized so that sum pi = 1.
  Vector<R> sqrt_pi;
  Vector<R> pi;
};

template <class R>
R log_of(double x) {
  using std::log;
  return log(R(x));
}

template <class R>
DenseModel<R> assemble(const Network& net, double temperature) {
  using std::exp;
  using std::sqrt;
  const std::size_t n = net.state_count();
  const R T(temperature);
  DenseModel<R> m;
  m.L = Matrix<R>::Zero(n, n);
  for (EdgeIndex e = 0; e < net.edge_count(); ++e) {
    const EdgeRecord& r = net.edge(e);
    const R log_k = log_of<R>(r.prefactor);
    m.L(r.a, r.b) = exp(log_k - log_of<R>(net.state(r.a).prefactor) - (R(r.saddle) - R(net.potential(r.a))) / T);
    m.L(r.b, r.a) = exp(log_k - log_of<R>(net.state(r.b).prefactor) - (R(r.saddle) - R(net.potential(r.b))) / T);
  }
  for (std::size_t i = 0; i < n; ++i) m.L(i, i) = -m.L.row(i).sum();

  const R vmin(net.potential(net.global_minimum()));
  m.pi.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    m.pi(i) = exp(log_of<R>(net.state(i).prefactor) - (R(net.potential(i)) - vmin) / T);
  m.pi /= m.pi.sum();
  m.sqrt_pi = m.pi.unaryExpr([](const R& x) { return R(sqrt(x)); });
  return m;
}

// Symmetric form P^{1/2} L P^{-1/2}. Off-diagonal entries are evaluated from
// their own exponent rather than from the product.
template <class R>
Matrix<R> symmetrized(const Network& net, double temperature, const DenseModel<R>& m) {
  using std::exp;
  const std::size_t n = net.state_count();
  const R T(temperature);
  Matrix<R> S = Matrix<R>::Zero(n, n);
  for (EdgeIndex e = 0; e < net.edge_count(); ++e) {
    const EdgeRecord& r = net.edge(e);
    const R log_k = log_of<R>(r.prefactor) -
                    (log_of<R>(net.state(r.a).prefactor) + log_of<R>(net.state(r.b).prefactor)) / 2;
    const R barrier = R(r.saddle) - (R(net.potential(r.a)) + R(net.potential(r.b))) / 2;
    const R value = exp(log_k - barrier / T);
    S(r.a, r.b) = value;
    S(r.b, r.a) = value;
  }
  for (std::size_t i = 0; i < n; ++i) S(i, i) = m.L(i, i);
  return S;
}

template <class R>
SpectralDecomposition spectrum_impl(const Network& net, double temperature) {
  using std::abs;
  using std::log;
  const std::size_t n = net.state_count();
  const DenseModel<R> m = assemble<R>(net, temperature);
  const Matrix<R> S = symmetrized<R>(net, temperature, m);

  Eigen::SelfAdjointEigenSolver<Matrix<R>> solver(-S);
  if (solver.info() != Eigen::Success) throw InternalError("symmetric eigensolver did not converge");

  SpectralDecomposition out;
  out.temperature = temperature;
  out.eigenvalues.resize(n);
  out.log_eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  out.equilibrium.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.equilibrium[i] = static_cast<double>(m.pi(i));

  const Matrix<R>& Y = solver.eigenvectors();
  for (std::size_t k = 0; k < n; ++k) {
    const R lambda = solver.eigenvalues()(k);
    if (k == 0) {
      out.eigenvalues[k] = 0.0;
      out.log_eigenvalues[k] = -std::numeric_limits<double>::infinity();
    } else {
      out.eigenvalues[k] = static_cast<double>(lambda);
      out.log_eigenvalues[k] =
          lambda > 0 ? static_cast<double>(log(lambda)) : -std::numeric_limits<double>::infinity();
    }
    Vector<R> phi = Y.col(k).cwiseQuotient(m.sqrt_pi);
    // Deterministic sign: the entry of largest magnitude is positive.
    Eigen::Index arg = 0;
    R largest = 0;
    for (Eigen::Index i = 0; i < phi.size(); ++i) {
      if (abs(phi(i)) > largest) {
        largest = abs(phi(i));
        arg = i;
      }
    }
    if (phi(arg) < 0) phi = -phi;
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = static_cast<double>(phi(i));
  }
  return out;
}

std::vector<char> membership(std::size_t n, std::span<const StateIndex> set, const char* what) {
  std::vector<char> in(n, 0);
  for (StateIndex s : set) {
    if (s >= n) throw std::out_of_range(std::string(what) + ": state index out of range");
    in[s] = 1;
  }
  return in;
}

// Solves L_II x = rhs over the states with free[i] set.
template <class R>
Vector<R> solve_interior(const Matrix<R>& L, const std::vector<char>& free, const Vector<R>& rhs_full) {
  std::vector<Eigen::Index> idx;
  for (std::size_t i = 0; i < free.size(); ++i)
    if (free[i]) idx.push_back(static_cast<Eigen::Index>(i));
  const Eigen::Index m = static_cast<Eigen::Index>(idx.size());
  Matrix<R> A(m, m);
  Vector<R> b(m);
  for (Eigen::Index p = 0; p < m; ++p) {
    b(p) = rhs_full(idx[p]);
    for (Eigen::Index q = 0; q < m; ++q) A(p, q) = L(idx[p], idx[q]);
  }
  Eigen::FullPivLU<Matrix<R>> lu(A);
  // Only exact zero pivots count as singular.
  lu.setThreshold(R(0));
  if (!lu.isInvertible()) throw InternalError("singular interior system in the dense oracle");
  const Vector<R> x = lu.solve(b);
  Vector<R> out = Vector<R>::Zero(static_cast<Eigen::Index>(free.size()));
  for (Eigen::Index p = 0; p < m; ++p) out(idx[p]) = x(p);
  return out;
}

template <class R>
std::vector<double> committor_impl(const Network& net, double temperature, StateIndex source,
                                   std::span<const StateIndex> sinks) {
  const std::size_t n = net.state_count();
  const std::vector<char> in_sink = membership(n, sinks, "committor");
  if (source >= n) throw std::out_of_range("committor: source out of range");
  if (in_sink[source]) throw std::invalid_argument("committor: source lies in the sink set");
  if (sinks.empty()) throw std::invalid_argument("committor: sink set is empty");

  const DenseModel<R> m = assemble<R>(net, temperature);
  std::vector<char> free(n, 0);
  for (std::size_t i = 0; i < n; ++i) free[i] = !in_sink[i] && i != source;
  // (L h)(i) = 0 with h(source) = 1 moves the source column to the right.
  Vector<R> rhs = -m.L.col(source);
  Vector<R> h = solve_interior<R>(m.L, free, rhs);
  h(source) = 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(h(i));
  return out;
}

template <class R>
std::vector<double> hitting_impl(const Network& net, double temperature, std::span<const StateIndex> targets) {
  const std::size_t n = net.state_count();
  if (targets.empty()) throw std::invalid_argument("mean_hitting_times: target set is empty");
  const std::vector<char> in_target = membership(n, targets, "mean_hitting_times");
  const DenseModel<R> m = assemble<R>(net, temperature);
  std::vector<char> free(n, 0);
  for (std::size_t i = 0; i < n; ++i) free[i] = !in_target[i];
  const Vector<R> rhs = Vector<R>::Constant(static_cast<Eigen::Index>(n), R(-1));
  const Vector<R> t = solve_interior<R>(m.L, free, rhs);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(t(i));
  return out;
}

template <class R>
std::vector<double> propagate_impl(const Network& net, double temperature, std::span<const double> p0, double t) {
  using std::exp;
  const std::size_t n = net.state_count();
  const DenseModel<R> m = assemble<R>(net, temperature);
  const Matrix<R> S = symmetrized<R>(net, temperature, m);
  Eigen::SelfAdjointEigenSolver<Matrix<R>> solver(-S);
  if (solver.info() != Eigen::Success) throw InternalError("symmetric eigensolver did not converge");

  // p(t) = P^{1/2} Y exp(-t Lambda) Y^T P^{-1/2} p0.
  Vector<R> q(n);
  for (std::size_t i = 0; i < n; ++i) q(i) = R(p0[i]) / m.sqrt_pi(i);
  Vector<R> c = solver.eigenvectors().transpose() * q;
  for (std::size_t k = 0; k < n; ++k) {
    const R lambda = k == 0 ? R(0) : R(solver.eigenvalues()(k));
    c(k) *= exp(-R(t) * lambda);
  }
  const Vector<R> y = solver.eigenvectors() * c;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(y(i) * m.sqrt_pi(i));
  return out;
}

template <class R>
ExitRate exit_rate_impl(const Network& net, double temperature, std::span<const StateIndex> set) {
  using std::log;
  const std::size_t n = net.state_count();
  const std::vector<char> in_set = membership(n, set, "exit_rate");
  const std::size_t size = static_cast<std::size_t>(std::count(in_set.begin(), in_set.end(), 1));
  if (size == 0 || size == n) throw std::invalid_argument("exit_rate: set must be a proper nonempty subset");

  const DenseModel<R> m = assemble<R>(net, temperature);
  const Matrix<R> S = symmetrized<R>(net, temperature, m);
  std::vector<Eigen::Index> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (in_set[i]) idx.push_back(static_cast<Eigen::Index>(i));
  const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
  Matrix<R> block(k, k);
  for (Eigen::Index p = 0; p < k; ++p)
    for (Eigen::Index q = 0; q < k; ++q) block(p, q) = -S(idx[p], idx[q]);
  Eigen::SelfAdjointEigenSolver<Matrix<R>> solver(block, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InternalError("symmetric eigensolver did not converge");
  const R lambda = solver.eigenvalues()(0);
  if (!(lambda > 0)) throw InternalError("restricted generator is not negative definite");
  return {static_cast<double>(lambda), static_cast<double>(log(lambda))};
}

}  // namespace

SpectralDecomposition dense_spectrum(const Network& net, double temperature, const DenseOptions& options) {
  check_inputs(net, temperature, options);
  return use_extended(net, options) ? spectrum_impl<Extended>(net, temperature)
                                    : spectrum_impl<double>(net, temperature);
}

std::vector<double> committor(const Network& net, double temperature, StateIndex source,
                              std::span<const StateIndex> sinks, const DenseOptions& options) {
  check_inputs(net, temperature, options);
  return use_extended(net, options) ? committor_impl<Extended>(net, temperature, source, sinks)
                                    : committor_impl<double>(net, temperature, source, sinks);
}

std::vector<double> mean_hitting_times(const Network& net, double temperature, std::span<const StateIndex> targets,
                                       const DenseOptions& options) {
  check_inputs(net, temperature, options);
  return use_extended(net, options) ? hitting_impl<Extended>(net, temperature, targets)
                                    : hitting_impl<double>(net, temperature, targets);
}

std::vector<double> propagate(const Network& net, double temperature, std::span<const double> p0, double t,
                              const DenseOptions& options) {
  check_inputs(net, temperature, options);
  if (p0.size() != net.state_count()) throw std::invalid_argument("propagate: p0 has the wrong length");
  if (!(t >= 0.0)) throw std::invalid_argument("propagate: time must be nonnegative");
  double total = 0.0;
  for (double p : p0) {
    if (!(p >= 0.0)) throw std::invalid_argument("propagate: p0 has a negative entry");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("propagate: p0 does not sum to 1");
  return use_extended(net, options) ? propagate_impl<Extended>(net, temperature, p0, t)
                                    : propagate_impl<double>(net, temperature, p0, t);
}

ExitRate exit_rate(const Network& net, double temperature, std::span<const StateIndex> set,
                   const DenseOptions& options) {
  check_inputs(net, temperature, options);
  return use_extended(net, options) ? exit_rate_impl<Extended>(net, temperature, set)
                                    : exit_rate_impl<double>(net, temperature, set);
}

}  // namespace ktn
