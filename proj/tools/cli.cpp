#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dkcore/engine.hpp"
#include "dkcore/graph.hpp"
#include "dkcore/oracle.hpp"
#include "dkcore/report.hpp"

namespace dkcore::cli {
namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphInput {
  std::string path;
  bool directed = false;
  std::optional<std::size_t> nodes;

  void add_flags(CLI::App& cmd) {
    cmd.add_option("graph", path, "Edge-list file ('-' for stdin)")->required();
    cmd.add_flag("--directed", directed, "Treat lines as arcs and symmetrize them");
    cmd.add_option("--nodes", nodes, "Pad the id space to at least this many nodes");
  }
};

struct SimulateConfig {
  GraphInput input;
  std::string mode = "one2one";
  std::size_t hosts = 0;
  std::string policy = "broadcast";
  std::string schedule = "sync";
  std::optional<std::uint64_t> seed;
  std::size_t reps = 1;
  bool optimized = false;
  std::optional<std::size_t> max_rounds;
  std::vector<std::size_t> sample_rounds;
  std::string output;
  std::string trace;
  std::string per_core;
  std::string batch_log;
};

fs::path output_path(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') return fs::path(dir) / p;
  }
  return p;
}

// Writes next to the target and renames, so readers never see partial files.
void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw InputError("cannot open '" + tmp.string() + "' for writing");
    file << content;
    if (!file.flush()) throw InputError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw InputError("cannot move output into '" + path.string() + "': " + ec.message());
}

// "-" goes to `out`, anything else to a file.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path == "-") {
    out << content;
  } else {
    write_atomic(output_path(path), content);
  }
}

Graph load_graph(const GraphInput& input, std::istream& in) {
  ParseOptions options;
  options.mode = input.directed ? EdgeMode::symmetrize_directed : EdgeMode::undirected;
  options.min_nodes = input.nodes;
  try {
    if (input.path == "-") return parse_edge_list(in, options);
    std::ifstream file(input.path, std::ios::binary);
    if (!file) throw InputError("cannot open '" + input.path + "'");
    return parse_edge_list(file, options);
  } catch (const ParseError& e) {
    throw InputError(input.path + ": " + e.what());
  }
}

int cmd_decompose(const GraphInput& input, std::string output, std::istream& in, std::ostream& out,
                  std::ostream& err) {
  const Graph g = load_graph(input, in);
  const CorenessMap c = coreness_exact(g);
  const auto s = stats(g, c);

  std::ostringstream file;
  write_coreness(file, g, c);
  if (output.empty()) {
    const std::string stem = input.path == "-" ? "stdin" : fs::path(input.path).stem().string();
    output = stem + ".coreness";
  }
  emit(output, file.str(), out);

  std::ostream& line = output == "-" ? err : out;
  line << s.nodes << ' ' << s.edges << ' ' << s.k_max << ' ' << s.k_avg_text() << ' ' << s.min_degree_count
       << '\n';
  return kOk;
}

void validate(const SimulateConfig& config, const CLI::App& cmd) {
  const bool many = config.mode == "one2many";
  if (!many && (cmd.count("--hosts") > 0 || cmd.count("--policy") > 0)) {
    throw UsageError("--hosts and --policy require --mode one2many");
  }
  if (many && cmd.count("--hosts") == 0) throw UsageError("--mode one2many requires --hosts");
  if (many && config.hosts == 0) throw UsageError("--hosts must be at least 1");
  if (many && config.optimized) throw UsageError("--optimized applies to --mode one2one only");
  if (config.reps == 0) throw UsageError("--reps must be at least 1");
  if (!many && cmd.count("--batch-log") > 0) throw UsageError("--batch-log requires --mode one2many");
}

int cmd_simulate(const SimulateConfig& config, std::istream& in, std::ostream& out) {
  const Graph g = load_graph(config.input, in);
  const CorenessMap oracle = coreness_exact(g);
  const bool many = config.mode == "one2many";

  RunOptions options;
  options.schedule = config.schedule == "random" ? Schedule::random : Schedule::sync;
  options.filter = config.optimized ? SendFilter::optimized : SendFilter::plain;
  options.max_rounds = config.max_rounds;
  options.oracle = &oracle;
  options.sample_rounds = config.sample_rounds;
  const Policy policy = config.policy == "p2p" ? Policy::p2p : Policy::broadcast;

  std::ostringstream batch_log;
  const std::uint64_t first_seed = config.seed.value_or(1);
  std::vector<RunReport> reports;
  for (std::size_t rep = 0; rep < config.reps; ++rep) {
    options.seed = first_seed + rep;
    options.batch_log = (rep == 0 && !config.batch_log.empty()) ? &batch_log : nullptr;
    reports.push_back(many ? run_one_to_many(g, config.hosts, policy, options) : run_one_to_one(g, options));
  }

  const double n = static_cast<double>(std::max<std::size_t>(g.num_nodes(), 1));
  double t_sum = 0.0;
  double m_sum = 0.0;
  double m_max_sum = 0.0;
  std::size_t t_min = std::numeric_limits<std::size_t>::max();
  std::size_t t_max = 0;
  bool converged = true;
  nlohmann::ordered_json seeds = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    seeds.push_back(r.seed);
    t_sum += static_cast<double>(r.exec_time_rounds);
    t_min = std::min(t_min, r.exec_time_rounds);
    t_max = std::max(t_max, r.exec_time_rounds);
    m_sum += static_cast<double>(r.initial_messages + r.update_messages) / n;
    m_max_sum += static_cast<double>(r.max_node_messages);
    converged = converged && r.converged;
  }
  const double reps = static_cast<double>(reports.size());

  nlohmann::ordered_json doc;
  doc["graph"] = {{"nodes", g.num_nodes()}, {"edges", g.num_edges()}};
  doc["repetitions"] = reports.size();
  doc["seeds"] = std::move(seeds);
  doc["aggregate"] = {{"t_avg", t_sum / reps}, {"t_min", t_min},         {"t_max", t_max},
                      {"m_avg", m_sum / reps}, {"m_max", m_max_sum / reps}, {"converged", converged}};
  doc["report"] = to_json(reports.front());
  if (!many && options.schedule == Schedule::sync && !config.optimized) {
    doc["bounds"] = to_json(check_bounds(g, oracle, reports.front()));
  }

  if (!config.trace.empty()) {
    std::ostringstream csv;
    write_trace_csv(csv, reports.front());
    emit(config.trace, csv.str(), out);
  }
  if (!config.per_core.empty()) {
    std::ostringstream csv;
    write_per_core_csv(csv, reports.front());
    emit(config.per_core, csv.str(), out);
  }
  if (!config.batch_log.empty()) emit(config.batch_log, batch_log.str(), out);
  emit(config.output.empty() ? "-" : config.output, doc.dump(2) + "\n", out);
  return converged ? kOk : kNotConverged;
}

int cmd_gen(const std::string& family, std::size_t n, std::optional<double> p, std::optional<std::uint64_t> seed,
            const std::string& output, std::ostream& out) {
  Graph g;
  try {
    if (family == "worstcase") {
      g = gen_worst_case(n);
    } else if (family == "chain") {
      g = gen_chain(n);
    } else {
      g = gen_random(n, *p, *seed);
    }
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  std::ostringstream text;
  write_edge_list(text, g);
  emit(output.empty() ? "-" : output, text.str(), out);
  return kOk;
}

int cmd_verify(const GraphInput& input, const std::string& coreness_path, std::istream& in, std::ostream& out) {
  const Graph g = load_graph(input, in);
  CorenessMap claimed;
  {
    std::ifstream file(coreness_path);
    if (!file) throw InputError("cannot open '" + coreness_path + "'");
    try {
      claimed = read_coreness(file, g);
    } catch (const ParseError& e) {
      throw InputError(coreness_path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw InputError(coreness_path + ": " + e.what());
    }
  }
  const CorenessMap exact = coreness_exact(g);
  bool ok = true;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (claimed[u] != exact[u]) {
      out << "mismatch " << g.label(u) << " expected " << exact[u] << " found " << claimed[u] << '\n';
      ok = false;
    }
  }
  for (NodeId u : verify_locality(g, claimed).violations) {
    out << "locality " << g.label(u) << '\n';
    ok = false;
  }
  if (ok) out << "ok\n";
  return ok ? kOk : kMismatch;
}

int cmd_bounds(const GraphInput& input, bool json, std::istream& in, std::ostream& out) {
  const Graph g = load_graph(input, in);
  const CorenessMap oracle = coreness_exact(g);
  RunOptions options;
  options.oracle = &oracle;
  const auto report = run_one_to_one(g, options);
  const auto bounds = check_bounds(g, oracle, report);
  if (json) {
    out << to_json(bounds).dump(2) << '\n';
  } else {
    write_bounds_text(out, bounds);
  }
  if (!report.converged) return kNotConverged;
  return bounds.all_satisfied ? kOk : kMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributed k-core decomposition: exact oracle, protocol simulator, bounds"};
  app.name("dkcore");
  app.require_subcommand(1);

  GraphInput decompose_input;
  std::string decompose_output;
  auto* decompose = app.add_subcommand("decompose", "Exact coreness of a graph; prints 'N M k_max k_avg K'");
  decompose_input.add_flags(*decompose);
  decompose->add_option("-o,--output", decompose_output, "Coreness file ('-' for stdout)");

  SimulateConfig sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate the distributed protocol and report metrics");
  sim.input.add_flags(*simulate);
  simulate->add_option("--mode", sim.mode, "one2one or one2many")->check(CLI::IsMember({"one2one", "one2many"}));
  simulate->add_option("--hosts", sim.hosts, "Host count for one2many");
  simulate->add_option("--policy", sim.policy, "broadcast or p2p")->check(CLI::IsMember({"broadcast", "p2p"}));
  simulate->add_option("--schedule", sim.schedule, "sync or random")->check(CLI::IsMember({"sync", "random"}));
  simulate->add_option("--seed", sim.seed, "First seed; repetitions use seed, seed+1, ... (default 1)");
  simulate->add_option("--reps", sim.reps, "Repetitions to aggregate");
  simulate->add_flag("--optimized", sim.optimized, "Skip sends that cannot affect the receiver (one2one)");
  simulate->add_option("--max-rounds", sim.max_rounds, "Round limit (default N+1)");
  simulate->add_option("--sample-rounds", sim.sample_rounds, "Rounds sampled in the per-core table")
      ->delimiter(',');
  simulate->add_option("-o,--output", sim.output, "Report JSON (default stdout)");
  simulate->add_option("--trace", sim.trace, "Per-round error trace CSV");
  simulate->add_option("--per-core", sim.per_core, "Per-core completion CSV");
  simulate->add_option("--batch-log", sim.batch_log, "One-to-many batch trace");

  std::string family;
  std::size_t gen_n = 0;
  std::optional<double> gen_p;
  std::optional<std::uint64_t> gen_seed;
  std::string gen_output;
  auto* gen = app.add_subcommand("gen", "Write a generated graph as an edge list");
  gen->add_option("family", family, "worstcase, chain or random")
      ->required()
      ->check(CLI::IsMember({"worstcase", "chain", "random"}));
  gen->add_option("n", gen_n, "Node count")->required();
  gen->add_option("--p", gen_p, "Edge probability (random)");
  gen->add_option("--seed", gen_seed, "Seed (random)");
  gen->add_option("-o,--output", gen_output, "Output file (default stdout)");

  GraphInput verify_input;
  std::string coreness_path;
  auto* verify = app.add_subcommand("verify", "Check a coreness file against the exact decomposition");
  verify_input.add_flags(*verify);
  verify->add_option("coreness", coreness_path, "Coreness file")->required();

  GraphInput bounds_input;
  bool bounds_json = false;
  auto* bounds = app.add_subcommand("bounds", "Check round and message bounds on a synchronous run");
  bounds_input.add_flags(*bounds);
  bounds->add_flag("--json", bounds_json, "Print JSON instead of key=value lines");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "dkcore: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*simulate) validate(sim, *simulate);
    if (*gen) {
      if (family == "random" && (!gen_p || !gen_seed)) throw UsageError("gen random requires --p and --seed");
      if (family != "random" && (gen_p || gen_seed)) throw UsageError("--p and --seed apply to gen random only");
    }
    if (*decompose) return cmd_decompose(decompose_input, decompose_output, in, out, err);
    if (*simulate) return cmd_simulate(sim, in, out);
    if (*gen) return cmd_gen(family, gen_n, gen_p, gen_seed, gen_output, out);
    if (*verify) return cmd_verify(verify_input, coreness_path, in, out);
    if (*bounds) return cmd_bounds(bounds_input, bounds_json, in, out);
  } catch (const UsageError& e) {
    err << "dkcore: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "dkcore: " << e.what() << '\n';
    return kInputError;
  } catch (const std::ios_base::failure& e) {
    err << "dkcore: " << e.what() << '\n';
    return kInputError;
  }
  return kUsage;
}

}  // namespace dkcore::cli
