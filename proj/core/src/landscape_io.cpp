#include "ktn/landscape_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unordered_map>

namespace ktn {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t p = 0;
  while (p < line.size()) {
    while (p < line.size() && std::isspace(static_cast<unsigned char>(line[p]))) ++p;
    const std::size_t begin = p;
    while (p < line.size() && !std::isspace(static_cast<unsigned char>(line[p]))) ++p;
    if (p > begin) fields.push_back(line.substr(begin, p - begin));
  }
  return fields;
}

bool parse_double(std::string_view s, double& out) {
  // Accepts Fortran 'D' exponents.
  std::string buffer(s);
  std::replace(buffer.begin(), buffer.end(), 'D', 'E');
  std::replace(buffer.begin(), buffer.end(), 'd', 'e');
  const char* first = buffer.data();
  const char* last = first + buffer.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_id(std::string_view s, std::uint64_t& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && out > 0;
}

std::string format_double(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

struct PendingEdge {
  std::uint64_t a;
  std::uint64_t b;
  double saddle;
  double prefactor;
  std::size_t line;
};

}  // namespace

Network read_native(std::istream& in, const std::string& source, Connectivity connectivity) {
  std::vector<StateRecord> states;
  std::unordered_map<std::uint64_t, StateIndex> index_of;
  std::vector<PendingEdge> pending;

  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto fields = split_fields(line);
    if (fields.empty() || fields[0].front() == '#') continue;
    if (fields[0] == "M") {
      if (fields.size() < 3 || fields.size() > 4)
        throw ParseError(source, number, "state line needs 'M <id> <V> [<k>]'");
      StateRecord s;
      if (!parse_id(fields[1], s.label)) throw ParseError(source, number, "state id must be a positive integer");
      if (!parse_double(fields[2], s.potential)) throw ParseError(source, number, "bad potential value");
      if (fields.size() == 4 && (!parse_double(fields[3], s.prefactor) || s.prefactor <= 0.0))
        throw ParseError(source, number, "prefactor must be a positive number");
      if (!index_of.emplace(s.label, static_cast<StateIndex>(states.size())).second)
        throw ParseError(source, number, "duplicate state id " + std::to_string(s.label));
      states.push_back(s);
    } else if (fields[0] == "E") {
      if (fields.size() < 4 || fields.size() > 5)
        throw ParseError(source, number, "edge line needs 'E <id1> <id2> <V> [<k>]'");
      PendingEdge e{0, 0, 0.0, 1.0, number};
      if (!parse_id(fields[1], e.a) || !parse_id(fields[2], e.b))
        throw ParseError(source, number, "state id must be a positive integer");
      if (!parse_double(fields[3], e.saddle)) throw ParseError(source, number, "bad saddle value");
      if (fields.size() == 5 && (!parse_double(fields[4], e.prefactor) || e.prefactor <= 0.0))
        throw ParseError(source, number, "prefactor must be a positive number");
      pending.push_back(e);
    } else {
      throw ParseError(source, number, "unknown record type '" + std::string(fields[0]) + "'");
    }
  }
  if (in.bad()) throw IoError("read failure on " + source);
  if (states.empty()) throw ParseError(source, number, "network has no states");

  std::vector<EdgeRecord> edges;
  std::map<std::pair<StateIndex, StateIndex>, std::size_t> seen;
  for (const PendingEdge& p : pending) {
    const auto ia = index_of.find(p.a);
    const auto ib = index_of.find(p.b);
    if (ia == index_of.end()) throw ParseError(source, p.line, "unknown state id " + std::to_string(p.a));
    if (ib == index_of.end()) throw ParseError(source, p.line, "unknown state id " + std::to_string(p.b));
    if (ia->second == ib->second) throw ParseError(source, p.line, "self-loop on state " + std::to_string(p.a));
    const StateIndex a = std::min(ia->second, ib->second);
    const StateIndex b = std::max(ia->second, ib->second);
    if (const auto [it, fresh] = seen.emplace(std::make_pair(a, b), p.line); !fresh)
      throw ParseError(source, p.line,
                       "duplicate edge " + std::to_string(p.a) + "-" + std::to_string(p.b) + " (first on line " +
                           std::to_string(it->second) + ")");
    if (!(p.saddle > std::max(states[a].potential, states[b].potential)))
      throw ParseError(source, p.line, "saddle must lie above both minima");
    edges.push_back({a, b, p.saddle, p.prefactor});
  }
  return Network(std::move(states), std::move(edges), connectivity);
}

Network read_native(const std::filesystem::path& path, Connectivity connectivity) {
  std::ifstream in = open_input(path);
  return read_native(in, path.string(), connectivity);
}

void write_native(std::ostream& out, const Network& net) {
  out << "# states " << net.state_count() << ", edges " << net.edge_count() << '\n';
  for (const StateRecord& s : net.states())
    out << "M " << s.label << ' ' << format_double(s.potential) << ' ' << format_double(s.prefactor) << '\n';
  for (const EdgeRecord& e : net.edges())
    out << "E " << net.label(e.a) << ' ' << net.label(e.b) << ' ' << format_double(e.saddle) << ' '
        << format_double(e.prefactor) << '\n';
  if (!out) throw IoError("write failure");
}

void write_native(const std::filesystem::path& path, const Network& net) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_native(out, net);
}

PathsampleResult read_pathsample(std::istream& minima, std::istream& transition_states,
                                 const PathsampleOptions& options, const std::string& min_source,
                                 const std::string& ts_source) {
  const ColumnMap& col = options.columns;
  if (col.min_energy == 0 || col.ts_energy == 0 || col.ts_min1 == 0 || col.ts_min2 == 0)
    throw std::invalid_argument("column indices are 1-based");

  std::vector<std::string> skipped;
  auto reject = [&](const std::string& source, std::size_t line, const std::string& what) {
    if (!options.tolerant) throw ParseError(source, line, what);
    skipped.push_back(source + ":" + std::to_string(line) + ": " + what);
  };

  // Minimum line i is state i; malformed minimum lines are always errors.
  std::vector<StateRecord> states;
  std::string line;
  std::size_t number = 0;
  while (std::getline(minima, line)) {
    ++number;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    StateRecord s;
    if (fields.size() < col.min_energy || !parse_double(fields[col.min_energy - 1], s.potential))
      throw ParseError(min_source, number, "no energy in field " + std::to_string(col.min_energy));
    s.label = states.size() + 1;
    states.push_back(s);
  }
  if (minima.bad()) throw IoError("read failure on " + min_source);
  if (states.empty()) throw ParseError(min_source, number, "no minima");

  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
  std::size_t invalid_saddles = 0;
  std::map<std::pair<StateIndex, StateIndex>, double> lowest;
  const std::size_t needed = std::max({col.ts_energy, col.ts_min1, col.ts_min2});
  number = 0;
  while (std::getline(transition_states, line)) {
    ++number;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    double saddle = 0.0;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (fields.size() < needed) {
      reject(ts_source, number, "expected at least " + std::to_string(needed) + " fields");
      continue;
    }
    if (!parse_double(fields[col.ts_energy - 1], saddle)) {
      reject(ts_source, number, "bad transition-state energy");
      continue;
    }
    if (!parse_id(fields[col.ts_min1 - 1], a) || !parse_id(fields[col.ts_min2 - 1], b)) {
      reject(ts_source, number, "bad minimum index");
      continue;
    }
    if (a > states.size() || b > states.size()) {
      reject(ts_source, number, "minimum index out of range (" + std::to_string(states.size()) + " minima)");
      continue;
    }
    if (a == b) {
      ++self_loops;
      continue;
    }
    const StateIndex ia = static_cast<StateIndex>(std::min(a, b) - 1);
    const StateIndex ib = static_cast<StateIndex>(std::max(a, b) - 1);
    if (!(saddle > std::max(states[ia].potential, states[ib].potential))) {
      if (!options.tolerant) throw ParseError(ts_source, number, "transition state lies below one of its minima");
      ++invalid_saddles;
      skipped.push_back(ts_source + ":" + std::to_string(number) + ": transition state below its minima");
      continue;
    }
    auto [it, fresh] = lowest.emplace(std::make_pair(ia, ib), saddle);
    if (!fresh) {
      ++duplicates;
      it->second = std::min(it->second, saddle);
    }
  }
  if (transition_states.bad()) throw IoError("read failure on " + ts_source);

  std::vector<EdgeRecord> edges;
  edges.reserve(lowest.size());
  for (const auto& [pair, saddle] : lowest) edges.push_back({pair.first, pair.second, saddle, 1.0});
  return PathsampleResult{Network(std::move(states), std::move(edges), options.connectivity), self_loops, duplicates,
                          invalid_saddles, std::move(skipped)};
}

PathsampleResult read_pathsample(const std::filesystem::path& minima, const std::filesystem::path& transition_states,
                                 const PathsampleOptions& options) {
  std::ifstream min_in = open_input(minima);
  std::ifstream ts_in = open_input(transition_states);
  return read_pathsample(min_in, ts_in, options, minima.string(), transition_states.string());
}

ComponentResult truncate(const Network& net, double cap, StateIndex anchor) {
  if (anchor >= net.state_count()) throw std::out_of_range("truncate: anchor out of range");
  std::vector<StateRecord> states(net.states().begin(), net.states().end());
  std::vector<EdgeRecord> edges;
  for (const EdgeRecord& e : net.edges())
    if (!(e.saddle > cap)) edges.push_back(e);
  const Network kept(std::move(states), std::move(edges), Connectivity::allow_disconnected);
  return connected_component(kept, anchor);
}

}  // namespace ktn
