#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ktn/network.hpp"

namespace ktn {

namespace {

struct Tagged {
  double value;
  ValueLocus locus;
};

constexpr std::size_t kMaxReportedPairs = 10'000;

// Sorts by value and reports every pair inside each run of nearly-equal
// neighbours.
bool find_ties(std::vector<Tagged>& values, double rel_tol, std::vector<OffendingPair>& out) {
  std::sort(values.begin(), values.end(), [](const Tagged& x, const Tagged& y) { return x.value < y.value; });
  bool distinct = true;
  std::size_t begin = 0;
  while (begin < values.size()) {
    std::size_t end = begin + 1;
    while (end < values.size() && nearly_equal(values[end - 1].value, values[end].value, rel_tol)) ++end;
    if (end - begin > 1) {
      distinct = false;
      for (std::size_t p = begin; p < end; ++p)
        for (std::size_t q = p + 1; q < end && out.size() < kMaxReportedPairs; ++q)
          out.push_back({values[p].value, values[q].value, values[p].locus, values[q].locus});
    }
    begin = end;
  }
  return distinct;
}

}  // namespace

bool nearly_equal(double a, double b, double rel_tol) noexcept {
  return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

GenericnessReport validate_genericness(const Network& net, const GenericnessOptions& options) {
  GenericnessReport report;
  std::vector<Tagged> values;

  values.reserve(net.state_count());
  for (StateIndex i = 0; i < net.state_count(); ++i)
    values.push_back({net.potential(i), {ValueKind::state_potential, i, kNoEdge}});
  report.distinct_state_potentials = find_ties(values, options.rel_tol, report.offending_pairs);

  values.clear();
  for (EdgeIndex e = 0; e < net.edge_count(); ++e)
    values.push_back({net.saddle(e), {ValueKind::saddle_potential, kNoState, e}});
  report.distinct_saddle_potentials = find_ties(values, options.rel_tol, report.offending_pairs);

  values.clear();
  if (options.full_triples) {
    const std::size_t total = net.state_count() * net.edge_count();
    if (total > options.full_triple_cap)
      throw SizeCapError("full genericness check would compare " + std::to_string(total) + " differences");
    values.reserve(total);
    for (EdgeIndex e = 0; e < net.edge_count(); ++e)
      for (StateIndex k = 0; k < net.state_count(); ++k)
        values.push_back({net.saddle(e) - net.potential(k), {ValueKind::escape_difference, k, e}});
  } else {
    values.reserve(2 * net.edge_count());
    for (EdgeIndex e = 0; e < net.edge_count(); ++e) {
      const EdgeRecord& r = net.edge(e);
      values.push_back({r.saddle - net.potential(r.a), {ValueKind::escape_difference, r.a, e}});
      values.push_back({r.saddle - net.potential(r.b), {ValueKind::escape_difference, r.b, e}});
    }
  }
  report.distinct_differences = find_ties(values, options.rel_tol, report.offending_pairs);
  return report;
}

std::string describe(const Network& net, const ValueLocus& locus) {
  auto edge_name = [&](EdgeIndex e) {
    const EdgeRecord& r = net.edge(e);
    return "V(" + std::to_string(net.label(r.a)) + "," + std::to_string(net.label(r.b)) + ")";
  };
  switch (locus.kind) {
    case ValueKind::state_potential:
      return "V(" + std::to_string(net.label(locus.state)) + ")";
    case ValueKind::saddle_potential:
      return edge_name(locus.edge);
    case ValueKind::escape_difference:
      return edge_name(locus.edge) + "-V(" + std::to_string(net.label(locus.state)) + ")";
  }
  return {};
}

}  // namespace ktn
