#include "ktn/export.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>

#include <json.hpp>

namespace ktn {

namespace {

std::string num(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

nlohmann::json labels(const Network& net, std::span<const StateIndex> states) {
  nlohmann::json out = nlohmann::json::array();
  for (StateIndex i : states) out.push_back(net.label(i));
  return out;
}

void check(std::ostream& out) {
  if (!out) throw IoError("write failure");
}

}  // namespace

void write_spectrum_csv(std::ostream& out, const Network& net, const SpectrumResult& result) {
  if (result.tie_break_used) out << "# tie-break: symbolic\n";
  out << "k,sink,V_cut,Delta,|C|,|S|\n";
  const double base = net.potential(result.first_sink);
  for (const SpectrumRecord& r : result.records)
    out << r.k << ',' << net.label(r.sink) << ',' << num(r.cut_saddle - base) << ',' << num(r.delta) << ','
        << r.cycle.size() << ',' << r.support.size() << '\n';
  check(out);
}

void write_sets_json(std::ostream& out, const Network& net, const SpectrumResult& result) {
  nlohmann::json doc;
  doc["tie_break_used"] = result.tie_break_used;
  doc["state_count"] = result.state_count;
  doc["first_sink"] = net.label(result.first_sink);
  nlohmann::json records = nlohmann::json::array();
  for (const SpectrumRecord& r : result.records) {
    nlohmann::json rec;
    rec["k"] = r.k;
    rec["sink"] = net.label(r.sink);
    rec["cut"] = {net.label(r.cut_outer), net.label(r.cut_inner)};
    rec["cut_saddle"] = r.cut_saddle;
    rec["delta"] = r.delta;
    rec["parent"] = r.parent;
    rec["support"] = labels(net, r.support);
    rec["cycle"] = labels(net, r.cycle);
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  out << doc.dump(1) << '\n';
  check(out);
}

void write_vk_csv(std::ostream& out, std::span<const double> vk) {
  out << "k,V_k\n";
  for (std::size_t k = 0; k < vk.size(); ++k) out << k + 1 << ',' << num(vk[k]) << '\n';
  check(out);
}

std::vector<StateIndex> layout_order(const Dendrogram& d) {
  std::vector<StateIndex> order;
  if (d.leaf_count == 0) return order;
  std::vector<std::size_t> stack{d.root()};
  while (!stack.empty()) {
    const std::size_t id = stack.back();
    stack.pop_back();
    if (id < d.leaf_count) {
      order.push_back(static_cast<StateIndex>(id));
      continue;
    }
    const DendrogramNode& node = d.nodes[id - d.leaf_count];
    stack.push_back(node.right);
    stack.push_back(node.left);
  }
  return order;
}

void write_dendrogram_json(std::ostream& out, const Network& net, const Dendrogram& d) {
  nlohmann::json doc;
  doc["leaf_count"] = d.leaf_count;
  doc["root"] = d.root();
  doc["leaf_order"] = labels(net, d.leaf_order);
  doc["layout"] = labels(net, layout_order(d));
  nlohmann::json leaves = nlohmann::json::array();
  for (StateIndex i = 0; i < d.leaf_count; ++i)
    leaves.push_back({{"id", i}, {"label", net.label(i)}, {"potential", net.potential(i)}});
  doc["leaves"] = std::move(leaves);
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t p = 0; p < d.nodes.size(); ++p) {
    const DendrogramNode& node = d.nodes[p];
    const EdgeRecord& e = net.edge(node.edge);
    nodes.push_back({{"id", d.leaf_count + p},
                     {"level", node.level},
                     {"left", node.left},
                     {"right", node.right},
                     {"size", node.size},
                     {"edge", {net.label(e.a), net.label(e.b)}}});
  }
  doc["nodes"] = std::move(nodes);
  out << doc.dump(1) << '\n';
  check(out);
}

void write_dendrogram_dot(std::ostream& out, const Network& net, const Dendrogram& d) {
  out << "digraph disconnectivity {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=point];\n";
  for (StateIndex i : layout_order(d))
    out << "  n" << i << " [shape=plaintext, label=\"" << net.label(i) << "\", potential=\"" << num(net.potential(i))
        << "\"];\n";
  for (std::size_t p = 0; p < d.nodes.size(); ++p) {
    const DendrogramNode& node = d.nodes[p];
    const std::size_t id = d.leaf_count + p;
    out << "  n" << id << " [level=\"" << num(node.level) << "\"];\n";
    out << "  n" << id << " -> n" << node.left << ";\n";
    out << "  n" << id << " -> n" << node.right << ";\n";
  }
  out << "}\n";
  check(out);
}

namespace {

std::vector<HistogramRow> histogram(const Network& net, const std::vector<std::pair<std::size_t, StateIndex>>& items) {
  std::map<std::size_t, std::pair<std::size_t, StateIndex>, std::greater<>> by_size;
  for (const auto& [size, sink] : items) {
    auto& slot = by_size[size];
    ++slot.first;
    slot.second = sink;
  }
  std::vector<HistogramRow> rows;
  for (const auto& [size, slot] : by_size)
    rows.push_back({size, slot.first, slot.first == 1 ? net.label(slot.second) : 0});
  return rows;
}

}  // namespace

std::vector<HistogramRow> cycle_size_histogram(const Network& net, const SpectrumResult& result) {
  std::vector<std::pair<std::size_t, StateIndex>> items{{result.state_count, result.first_sink}};
  for (const SpectrumRecord& r : result.records) items.emplace_back(r.cycle.size(), r.sink);
  return histogram(net, items);
}

std::vector<HistogramRow> set_size_histogram(const Network& net, const SpectrumResult& result) {
  std::vector<std::pair<std::size_t, StateIndex>> items;
  for (const SpectrumRecord& r : result.records)
    if (r.parent == 0) items.emplace_back(r.support.size(), r.sink);
  return histogram(net, items);
}

void write_histogram_csv(std::ostream& out, std::span<const HistogramRow> rows) {
  out << "size,count,sink\n";
  for (const HistogramRow& r : rows) {
    out << r.size << ',' << r.count << ',';
    if (r.sink != 0) out << r.sink;
    out << '\n';
  }
  check(out);
}

void write_lumped_csv(std::ostream& out, const Network& net, const LumpedNetwork& lumped) {
  out << "k,sink,V_cut,Delta,|C|,|S|\n";
  const double base = net.potential(lumped.reference);
  for (const LumpedSet& s : lumped.sets)
    out << s.k << ',' << net.label(s.sink) << ',' << num(s.cut_saddle - base) << ',' << num(s.delta) << ','
        << s.cycle_size << ',' << s.support_size << '\n';
  check(out);
}

void write_lumped_links_csv(std::ostream& out, const Network& net, const LumpedNetwork& lumped) {
  auto sink_label = [&](std::size_t super) {
    return super == 0 ? net.label(lumped.reference) : net.label(lumped.sets[super - 1].sink);
  };
  out << "from_sink,to_sink,saddle\n";
  for (const LumpedLink& l : lumped.links)
    out << sink_label(l.from) << ',' << sink_label(l.to) << ',' << num(l.saddle) << '\n';
  check(out);
}

}  // namespace ktn
