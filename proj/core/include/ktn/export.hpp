#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "ktn/dendrogram.hpp"
#include "ktn/lumping.hpp"
#include "ktn/network.hpp"
#include "ktn/spectrum.hpp"

namespace ktn {

/// Columns k,sink,V_cut,Delta,|C|,|S|. V_cut is measured from V(s*_1) and
/// states appear by label. A leading comment line flags tie-broken runs.
void write_spectrum_csv(std::ostream& out, const Network& net, const SpectrumResult& result);

/// Sinks, cut edges, S_k and C_k of every record, as JSON.
void write_sets_json(std::ostream& out, const Network& net, const SpectrumResult& result);

/// Columns k,V_k.
void write_vk_csv(std::ostream& out, std::span<const double> vk);

/// Leaves in left-to-right drawing order (in-order traversal of the merge tree).
std::vector<StateIndex> layout_order(const Dendrogram& d);

void write_dendrogram_json(std::ostream& out, const Network& net, const Dendrogram& d);
/// Graphviz DOT description of the merge tree.
void write_dendrogram_dot(std::ostream& out, const Network& net, const Dendrogram& d);

struct HistogramRow {
  std::size_t size = 0;
  std::size_t count = 0;
  /// The sink label when count == 1, otherwise 0.
  std::uint64_t sink = 0;
};

/// |C(i)| over all states, C(s*_1) = S. Descending size.
std::vector<HistogramRow> cycle_size_histogram(const Network& net, const SpectrumResult& result);
/// |S_k| over the top-level supports (parent 0). Descending size.
std::vector<HistogramRow> set_size_histogram(const Network& net, const SpectrumResult& result);
/// Columns size,count,sink.
void write_histogram_csv(std::ostream& out, std::span<const HistogramRow> rows);

/// Spectrum layout restricted to the lumped sets, V_cut measured from the reference.
void write_lumped_csv(std::ostream& out, const Network& net, const LumpedNetwork& lumped);
/// Columns from_sink,to_sink,saddle between super-states.
void write_lumped_links_csv(std::ostream& out, const Network& net, const LumpedNetwork& lumped);

}  // namespace ktn
