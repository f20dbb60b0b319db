#include "ktn/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ktn/crosscheck.hpp"
#include "ktn/dendrogram.hpp"
#include "ktn/export.hpp"
#include "ktn/lumping.hpp"
#include "ktn/metastability.hpp"
#include "ktn/mstree.hpp"
#include "ktn/network.hpp"
#include "ktn/oracle.hpp"
#include "ktn/spectrum.hpp"

namespace ktn::cli {

namespace {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

ColumnMap parse_columns(const std::string& text) {
  std::vector<std::size_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v <= 0) throw std::invalid_argument(item);
      values.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw std::invalid_argument("--columns expects four positive integers, got '" + text + "'");
    }
  }
  if (values.size() != 4) throw std::invalid_argument("--columns expects four positive integers, got '" + text + "'");
  return {values[0], values[1], values[2], values[3]};
}

StateIndex resolve_anchor(const Network& net, const RunConfig& cfg) {
  if (!cfg.anchor) return net.global_minimum();
  const auto idx = net.find_label(*cfg.anchor);
  if (!idx) throw std::invalid_argument("anchor state " + std::to_string(*cfg.anchor) + " is not in the network");
  return *idx;
}

Network load(const RunConfig& cfg, Connectivity connectivity, std::ostream& err) {
  if (cfg.input) {
    Network net = read_native(*cfg.input, connectivity);
    if (cfg.verbosity > 0)
      err << "loaded " << net.state_count() << " states, " << net.edge_count() << " edges from " << cfg.input->string()
          << '\n';
    return net;
  }
  PathsampleOptions options;
  options.columns = cfg.columns;
  options.tolerant = cfg.tolerant;
  options.connectivity = Connectivity::allow_disconnected;
  PathsampleResult raw = read_pathsample(cfg.pathsample->first, cfg.pathsample->second, options);
  err << "pathsample: " << raw.network.state_count() << " minima, " << raw.network.edge_count() << " edges ("
      << raw.self_loops_dropped << " self-loops dropped, " << raw.duplicates_collapsed << " duplicates collapsed";
  if (raw.invalid_saddles_dropped > 0) err << ", " << raw.invalid_saddles_dropped << " invalid saddles dropped";
  err << ")\n";
  for (const std::string& line : raw.skipped_lines) err << "skipped " << line << '\n';
  if (connectivity == Connectivity::allow_disconnected || raw.network.is_connected()) return std::move(raw.network);

  const StateIndex anchor = resolve_anchor(raw.network, cfg);
  ComponentResult comp = connected_component(raw.network, anchor);
  err << "connected component of state " << raw.network.label(anchor) << ": " << comp.network.state_count()
      << " states, " << comp.network.edge_count() << " edges\n";
  return std::move(comp.network);
}

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(*cfg.out_dir);
  const std::filesystem::path path = *cfg.out_dir / name;
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

SpectrumOptions spectrum_options(const RunConfig& cfg) {
  SpectrumOptions options;
  options.ties = cfg.tie_break ? TieBreak::symbolic : TieBreak::reject;
  options.rel_tol = cfg.rel_tol;
  return options;
}

void tie_banner(const SpectrumResult& result, std::ostream& err) {
  if (result.tie_break_used)
    err << "warning: degenerate energies resolved by the symbolic tie-break; orderings among tied values are "
           "conventional\n";
}

// ---------------------------------------------------------------------------

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Network net = load(cfg, Connectivity::allow_disconnected, err);
  bool ok = true;
  out << "states: " << net.state_count() << '\n';
  out << "edges: " << net.edge_count() << '\n';
  if (net.is_connected()) {
    out << "connectivity: PASS\n";
  } else {
    ok = false;
    out << "connectivity: FAIL (disconnected network; restrict it to one connected component first)\n";
  }

  const GenericnessReport report = validate_genericness(net, {cfg.rel_tol});
  out << "genericness: " << (report.generic() ? "PASS" : "FAIL") << " (state potentials "
      << (report.distinct_state_potentials ? "distinct" : "tied") << ", saddles "
      << (report.distinct_saddle_potentials ? "distinct" : "tied") << ", escape differences "
      << (report.distinct_differences ? "distinct" : "tied") << ")\n";
  if (!report.generic()) {
    ok = false;
    constexpr std::size_t kShown = 20;
    for (std::size_t p = 0; p < report.offending_pairs.size() && p < kShown; ++p) {
      const OffendingPair& pair = report.offending_pairs[p];
      out << "  " << describe(net, pair.first) << " = " << fmt(pair.first_value, "%.17g") << " ties with "
          << describe(net, pair.second) << " = " << fmt(pair.second_value, "%.17g") << '\n';
    }
    if (report.offending_pairs.size() > kShown)
      out << "  ... " << report.offending_pairs.size() - kShown << " more\n";
  }

  for (double T : cfg.temperatures) {
    const DetailedBalanceCheck balance = check_detailed_balance(net, T, 1e-12);
    out << "detailed balance T=" << fmt(T) << ": " << (balance.balanced ? "PASS" : "FAIL")
        << " (max violation " << fmt(balance.max_violation, "%.3g") << ")\n";
    ok = ok && balance.balanced;
  }
  return ok ? kSuccess : kValidationFailure;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Network net = load(cfg, Connectivity::require, err);
  Timer timer;
  const SpanningForest mst = kruskal(net);
  SpectrumOptions options = spectrum_options(cfg);
  options.min_delta = cfg.threshold;
  const SpectrumResult result = run_spectrum(net, mst, options);
  if (cfg.verbosity > 0) err << "spectrum: " << result.records.size() << " records in " << fmt(timer.seconds()) << " s\n";
  tie_banner(result, err);

  write_spectrum_csv(out, net, result);
  if (cfg.out_dir) {
    auto csv = open_output(cfg, "spectrum.csv");
    write_spectrum_csv(csv, net, result);
    auto sets = open_output(cfg, "sets.json");
    write_sets_json(sets, net, result);
    if (result.complete()) {
      auto vk = open_output(cfg, "vk.csv");
      write_vk_csv(vk, vk_sequence(result, net, mst));
    }
  }
  return kSuccess;
}

int cmd_dgraph(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Network net = load(cfg, Connectivity::require, err);
  const SpanningForest mst = kruskal(net);
  std::vector<StateIndex> order;
  if (cfg.order == "sink") {
    const SpectrumResult result = run_spectrum(net, mst, spectrum_options(cfg));
    tie_banner(result, err);
    order = order_by_sink(result);
  } else if (cfg.order == "id") {
    order = order_by_id(net);
  } else {
    throw std::invalid_argument("--order must be 'sink' or 'id'");
  }
  const Dendrogram d = dendrogram(net, mst, order);
  out << "leaf order:";
  for (StateIndex i : d.leaf_order) out << ' ' << net.label(i);
  out << "\nlayout:";
  for (StateIndex i : layout_order(d)) out << ' ' << net.label(i);
  out << '\n';
  if (cfg.out_dir) {
    auto json = open_output(cfg, "dendrogram.json");
    write_dendrogram_json(json, net, d);
    auto dot = open_output(cfg, "dendrogram.dot");
    write_dendrogram_dot(dot, net, d);
  }
  return kSuccess;
}

int cmd_truncate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.cap) throw std::invalid_argument("truncate needs --cap");
  const Network net = load(cfg, Connectivity::allow_disconnected, err);
  const StateIndex anchor = resolve_anchor(net, cfg);
  const double cap = net.potential(anchor) + *cfg.cap;
  const ComponentResult kept = truncate(net, cap, anchor);
  out << kept.network.state_count() << " states, " << kept.network.edge_count() << " edges\n";
  if (cfg.out_dir) {
    auto file = open_output(cfg, "truncated.dat");
    write_native(file, kept.network);
  }
  return kSuccess;
}

int cmd_lump(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.cap) throw std::invalid_argument("lump needs --cap");
  const Network net = load(cfg, Connectivity::require, err);
  const SpanningForest mst = kruskal(net);
  const SpectrumResult result = run_spectrum(net, mst, spectrum_options(cfg));
  tie_banner(result, err);
  const StateIndex reference = resolve_anchor(net, cfg);
  const LumpedNetwork lumped = lump(net, result, net.potential(reference) + *cfg.cap, reference);
  err << "lumped: " << lumped.sets.size() << " sets\n";
  if (result.tie_break_used) out << "# tie-break: symbolic\n";
  write_lumped_csv(out, net, lumped);
  if (cfg.out_dir) {
    auto spectrum = open_output(cfg, "spectrum.csv");
    write_spectrum_csv(spectrum, net, result);
    auto sets = open_output(cfg, "lumped.csv");
    if (result.tie_break_used) sets << "# tie-break: symbolic\n";
    write_lumped_csv(sets, net, lumped);
    auto links = open_output(cfg, "lumped_links.csv");
    write_lumped_links_csv(links, net, lumped);
    auto cycles = open_output(cfg, "cycle_sizes.csv");
    write_histogram_csv(cycles, cycle_size_histogram(net, result));
    auto supports = open_output(cfg, "set_sizes.csv");
    write_histogram_csv(supports, set_size_histogram(net, result));
  }
  return kSuccess;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Network net = load(cfg, Connectivity::require, err);
  if (net.state_count() > kDefaultEnumerationCap)
    throw SizeCapError("oracle is capped at " + std::to_string(kDefaultEnumerationCap) + " states; network has " +
                       std::to_string(net.state_count()));
  const SpanningForest mst = kruskal(net);
  const SpectrumResult result = run_spectrum(net, mst, spectrum_options(cfg));
  tie_banner(result, err);
  std::vector<double> temps = cfg.temperatures;
  if (temps.empty()) temps = {0.2, 0.1, 0.05};

  bool ok = true;
  auto row = [&](const std::string& name, bool pass, const std::string& detail) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-28s %-5s %s\n", name.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
    out << buf;
    ok = ok && pass;
  };

  constexpr double kEnumerationTolerance = 1e-12;
  const EnumerationComparison cmp = compare_with_enumeration(net, mst, result);
  row("wgraph-equivalence", cmp.max_vk_error <= kEnumerationTolerance && cmp.max_delta_error <= kEnumerationTolerance,
      "max |dV| " + fmt(cmp.max_vk_error, "%.3g") + ", max |dDelta| " + fmt(cmp.max_delta_error, "%.3g"));
  row("nested-sinks", cmp.sinks_nested, "");
  row("nested-forests", cmp.forests_nested, "");
  row("forests-in-mst", cmp.forests_in_mst, "");
  row("algorithm-matches-wgraphs", cmp.matches_algorithm, "");

  std::vector<TemperatureCheck> sweep;
  for (double T : temps) sweep.push_back(check_temperature(net, result, T));
  const SweepVerdict verdict = assess_sweep(sweep);
  row("eigenvalue-asymptotics", verdict.asymptotics, std::to_string(verdict.guarded_pairs) + " guarded (k,T) pairs");
  row("eigenvector-supports", verdict.eigenvectors, "");
  row("committor-eigenvector", verdict.committors, "");
  row("exit-rates", verdict.exit_rates, "");
  for (const std::string& f : verdict.failures) err << "  " << f << '\n';

  if (cfg.verbosity > 0) {
    for (const TemperatureCheck& t : sweep)
      for (const ModeMatch& m : t.modes)
        err << "T=" << fmt(t.temperature) << " k=" << m.k << " Delta=" << fmt(m.delta)
            << " guarded=" << m.gap_guarded << " err=" << fmt(m.exponent_error, "%.3g")
            << " cos=" << fmt(m.vector_cosine, "%.4f") << " committor=" << fmt(m.committor_cosine, "%.4f")
            << " exit=" << fmt(m.exit_ratio, "%.4f") << '\n';
  }
  return ok ? kSuccess : kValidationFailure;
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, std::function<int(const RunConfig&, std::ostream&, std::ostream&)>> commands{
      {"validate", cmd_validate}, {"spectrum", cmd_spectrum}, {"dgraph", cmd_dgraph},
      {"truncate", cmd_truncate}, {"lump", cmd_lump},         {"oracle", cmd_oracle},
  };
  try {
    const auto it = commands.find(cfg.command);
    if (it == commands.end()) throw std::invalid_argument("unknown command '" + cfg.command + "'");
    if (cfg.input.has_value() == cfg.pathsample.has_value())
      throw std::invalid_argument("give exactly one of --input and --pathsample");
    return it->second(cfg, out, err);
  } catch (const SizeCapError& e) {
    err << "error: " << e.what() << '\n';
    return kSizeCapRefusal;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero-temperature asymptotic spectra of kinetic transition networks", "ktnspec"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string input;
  std::vector<std::string> pathsample;
  std::string columns;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", input, "Network in the native text format");
    sub->add_option("--pathsample", pathsample, "PATHSAMPLE min.data and ts.data")->expected(2);
    sub->add_option("--columns", columns, "min_energy,ts_energy,ts_min1,ts_min2 (1-based)");
    sub->add_flag("--tolerant", cfg.tolerant, "Skip malformed transition-state lines");
    sub->add_option("--anchor", cfg.anchor, "Anchor/reference state id (default: global minimum)");
    sub->add_flag("--tie-break", cfg.tie_break, "Resolve degenerate energies symbolically");
    sub->add_option("--rel-tol", cfg.rel_tol, "Relative tolerance for distinct energies")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out_dir, "Output directory");
    sub->add_flag("-v,--verbose", cfg.verbosity, "Progress on standard error");
  };
  auto add_temperature = [&](CLI::App* sub) {
    sub->add_option("--temperature", cfg.temperatures, "Temperature(s), comma separated")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
  };

  CLI::App* validate = app.add_subcommand("validate", "Check genericness, connectivity and detailed balance");
  add_common(validate);
  add_temperature(validate);
  CLI::App* spectrum = app.add_subcommand("spectrum", "Asymptotic spectrum by spanning-tree surgery");
  add_common(spectrum);
  spectrum->add_option("--threshold", cfg.threshold, "Stop before the first Delta below this value");
  CLI::App* dgraph = app.add_subcommand("dgraph", "Disconnectivity graph");
  add_common(dgraph);
  dgraph->add_option("--order", cfg.order, "Leaf order")->check(CLI::IsMember({"sink", "id"}));
  CLI::App* trunc = app.add_subcommand("truncate", "Drop high saddles and keep the anchor's component");
  add_common(trunc);
  trunc->add_option("--cap", cfg.cap, "Saddle cap above the anchor energy")->required();
  CLI::App* lumping = app.add_subcommand("lump", "Disjoint supports below a barrier cap");
  add_common(lumping);
  lumping->add_option("--cap", cfg.cap, "Cut-saddle cap above the reference energy")->required();
  CLI::App* oracle = app.add_subcommand("oracle", "Cross-check against brute force and dense numerics");
  add_common(oracle);
  add_temperature(oracle);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationFailure;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (!input.empty()) cfg.input = input;
  if (!pathsample.empty()) cfg.pathsample = std::make_pair(pathsample[0], pathsample[1]);
  try {
    if (!columns.empty()) cfg.columns = parse_columns(columns);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  return execute(cfg, out, err);
}

}  // namespace ktn::cli
