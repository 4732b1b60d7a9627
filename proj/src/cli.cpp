#include "csm/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csm/datagen.hpp"
#include "csm/graph_pair.hpp"
#include "csm/miner.hpp"
#include "csm/outcome_io.hpp"
#include "format.hpp"

namespace csm {

namespace {

struct RunConfig {
  std::string graph_a;
  std::string graph_b;
  std::vector<std::string> seeds;
  HopCount radius = 1;
  std::optional<HopCount> radius_grow;
  std::string coherence = "min";
  std::string contrast = "absdiff";
  std::string penalty = "uniform";
  std::size_t k = 1;
  bool no_core = false;
  bool no_neighbor = false;
  std::string format = "json";
  std::string out_path;
  bool verbose = false;

  // check
  std::size_t trials = 0;
  std::uint64_t rng_seed = 1;

  // gen
  PlantSpec plant;
  std::string out_prefix = "planted";

  // split
  std::string events_path;
  std::int64_t split_at = 0;
  std::string transform = "identity";
  std::string out_a;
  std::string out_b;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << content;
  if (!file) throw InputError("failed writing '" + path + "'");
}

void emit(const RunConfig& config, std::ostream& out, const std::string& content) {
  if (config.out_path.empty()) {
    out << content;
  } else {
    write_file(config.out_path, content);
  }
}

int cmd_mine(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.graph_a.empty() || config.graph_b.empty()) {
    throw InputError("mine needs --graph-a and --graph-b");
  }
  const GraphPair pair = load_pair(config.graph_a, config.graph_b);
  const MetricSet metrics = MetricSet::by_name(config.coherence, config.contrast, config.penalty);

  MiningOptions options;
  options.radius = config.radius;
  options.radius_grow = config.radius_grow;
  options.max_subgraphs = config.k;
  options.use_core = !config.no_core;
  options.use_neighborhood = !config.no_neighbor;
  if (config.verbose) {
    options.solver.observer = [&err](const FeasibilityProbe& p) {
      err << "delta=" << format_double(p.delta) << " feasible=" << (p.feasible ? "yes" : "no")
          << " flow=" << format_double(p.flow) << " baseline=" << format_double(p.baseline)
          << " witness=" << p.source_side.size() << '\n';
    };
  }

  const MiningOutcome outcome = mine(pair, metrics, resolve_seeds(pair, config.seeds), options);
  for (const auto& warning : outcome.warnings) err << "warning: " << warning << '\n';

  std::ostringstream text;
  if (config.format == "json") {
    text << outcome_to_json(pair, outcome).dump(2) << '\n';
  } else if (config.format == "dot") {
    write_outcome_dot(text, pair, outcome);
  } else if (config.format == "csv") {
    write_outcome_csv(text, pair, outcome);
  } else {
    throw InputError("unknown format '" + config.format + "' (expected json|dot|csv)");
  }
  emit(config, out, text.str());
  return kExitOk;
}

int cmd_check(const RunConfig& config, std::ostream& out, const SolverFn& solver) {
  std::vector<CheckRow> rows;
  if (!config.graph_a.empty() || !config.graph_b.empty()) {
    if (config.graph_a.empty() || config.graph_b.empty()) {
      throw InputError("check needs both --graph-a and --graph-b");
    }
    const GraphPair pair = load_pair(config.graph_a, config.graph_b);
    const MetricSet metrics = MetricSet::by_name(config.coherence, config.contrast, config.penalty);
    const NodeSet seeds = resolve_seeds(pair, config.seeds);
    const NodeSet all = [&] {
      NodeSet v(pair.node_count());
      for (NodeIndex i = 0; i < v.size(); ++i) v[i] = i;
      return v;
    }();
    auto pool = [&](const NodeSet& anchor) {
      return anchor.empty() ? all : neighbors(pair, anchor, config.radius);
    };
    auto core_instance = make_instance(pair, metrics.coherence, metrics.penalty, seeds, pool(seeds));
    rows.push_back(compare_on(core_instance, "core", solver));
    NodeSet core = brute_force(core_instance).nodes;
    auto grow = config.radius_grow.value_or(config.radius);
    NodeSet contrast_pool = core.empty() ? all : neighbors(pair, core, grow);
    auto contrast_instance = make_instance(pair, metrics.contrast, metrics.penalty, core, contrast_pool);
    rows.push_back(compare_on(contrast_instance, "contrast", solver));
  } else {
    const std::size_t trials = config.trials == 0 ? 1 : config.trials;
    for (std::size_t t = 0; t < trials; ++t) {
      const WeightKind kind = t % 2 == 0 ? WeightKind::Integer : WeightKind::LogScaled;
      Trial trial = random_trial(config.rng_seed * 1000003ULL + t, kind);
      const char* phase[] = {"core", "contrast"};
      for (std::size_t i = 0; i < trial.instances.size(); ++i) {
        rows.push_back(compare_on(trial.instances[i], "trial" + std::to_string(t) + "/" + phase[i], solver));
      }
    }
  }
  print_check_table(out, rows);
  for (const auto& row : rows) {
    if (!row.pass) return kExitInternalError;
  }
  return kExitOk;
}

int cmd_gen(const RunConfig& config, std::ostream& out) {
  const PlantedInstance planted = generate(config.plant);
  std::ostringstream a;
  std::ostringstream b;
  write_edge_list(a, planted.pair, Side::A);
  write_edge_list(b, planted.pair, Side::B);

  auto labels = [&](const NodeSet& nodes) {
    std::vector<std::string> out_labels;
    for (NodeIndex u : nodes) out_labels.push_back(planted.pair.labels().label(u));
    return out_labels;
  };
  const PlantSpec& s = config.plant;
  nlohmann::ordered_json truth;
  truth["spec"] = {
      {"nodes", s.nodes},
      {"core_size", s.core_size},
      {"contrast_size", s.contrast_size},
      {"background_probability", s.background_probability},
      {"background_weight_min", s.background_weight_min},
      {"background_weight_max", s.background_weight_max},
      {"core_weight", s.core_weight},
      {"contrast_weight", s.contrast_weight},
      {"noise_blocks", s.noise_blocks},
      {"noise_block_size", s.noise_block_size},
      {"noise_weight", s.noise_weight},
      {"seed", s.seed},
  };
  truth["core"] = labels(planted.core);
  truth["contrast"] = labels(planted.contrast);
  truth["noise"] = labels(planted.noise);

  const std::string prefix = config.out_prefix;
  write_file(prefix + "_a.tsv", a.str());
  write_file(prefix + "_b.tsv", b.str());
  write_file(prefix + "_truth.json", truth.dump(2) + "\n");
  out << prefix << "_a.tsv\n" << prefix << "_b.tsv\n" << prefix << "_truth.json\n";
  return kExitOk;
}

int cmd_split(const RunConfig& config, std::ostream& out) {
  std::ifstream in(config.events_path);
  if (!in) throw InputError("cannot open '" + config.events_path + "'");
  auto events = parse_events(in, config.events_path);
  if (events.empty()) throw InputError("no events in '" + config.events_path + "'");
  const GraphPair pair = build_from_events(events, config.split_at, parse_transform(config.transform));

  std::ostringstream a;
  std::ostringstream b;
  write_edge_list(a, pair, Side::A);
  write_edge_list(b, pair, Side::B);
  write_file(config.out_a, a.str());
  write_file(config.out_b, b.str());
  out << config.out_a << ": " << pair.edge_count(Side::A) << " edges\n"
      << config.out_b << ": " << pair.edge_count(Side::B) << " edges\n";
  return kExitOk;
}

void add_pair_options(CLI::App& cmd, RunConfig& config) {
  cmd.add_option("--graph-a", config.graph_a, "Edge list of graph A (u v w per line)");
  cmd.add_option("--graph-b", config.graph_b, "Edge list of graph B");
  cmd.add_option("--seed", config.seeds, "Seed node label (repeatable; none = seedless)");
  cmd.add_option("--radius-grow", config.radius_grow, "Radius for the growth phase (default: --radius)");
  cmd.add_option("--coherence", config.coherence, "Edge coherence metric")->check(CLI::IsMember({"min"}));
  cmd.add_option("--contrast", config.contrast, "Edge contrast metric")->check(CLI::IsMember({"absdiff"}));
  cmd.add_option("--penalty", config.penalty, "Node penalty")->check(CLI::IsMember({"uniform"}));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            const SolverFn& solver) {
  CLI::App app{"Contrast subgraph mining over two graphs on a shared node set", "csm"};
  app.set_version_flag("--version", std::string("csm ") + std::string(kVersion));
  app.require_subcommand(1);

  RunConfig config;

  auto* mine_cmd = app.add_subcommand("mine", "Mine the coherent core and contrast subgraphs");
  add_pair_options(*mine_cmd, config);
  mine_cmd->add_option("--radius", config.radius, "Neighborhood radius r (hops)")->required();
  mine_cmd->add_option("--k", config.k, "Maximum number of contrast subgraphs")->check(CLI::PositiveNumber);
  mine_cmd->add_flag("--no-core", config.no_core, "Ablation: skip the coherent-core phase");
  mine_cmd->add_flag("--no-neighbor", config.no_neighbor, "Ablation: drop the radius-r constraint");
  mine_cmd->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"json", "dot", "csv"}));
  mine_cmd->add_option("--out", config.out_path, "Write the result here instead of stdout");
  mine_cmd->add_flag("--verbose", config.verbose, "Print every feasibility probe to stderr");

  auto* check_cmd = app.add_subcommand("check", "Compare the solver with the brute-force oracle");
  add_pair_options(*check_cmd, config);
  check_cmd->add_option("--radius", config.radius, "Neighborhood radius r (hops)");
  check_cmd->add_option("--trials", config.trials, "Number of random small instances");
  check_cmd->add_option("--rng-seed", config.rng_seed, "Seed for random trials");

  auto* gen_cmd = app.add_subcommand("gen", "Generate a planted graph pair with ground truth");
  PlantSpec& plant = config.plant;
  gen_cmd->add_option("--n", plant.nodes, "Number of nodes");
  gen_cmd->add_option("--core", plant.core_size, "Core block size");
  gen_cmd->add_option("--contrast", plant.contrast_size, "Contrast block size");
  gen_cmd->add_option("--p-bg", plant.background_probability, "Background edge probability per graph");
  gen_cmd->add_option("--bg-min", plant.background_weight_min, "Smallest background weight");
  gen_cmd->add_option("--bg-max", plant.background_weight_max, "Largest background weight");
  gen_cmd->add_option("--w-core", plant.core_weight, "Core edge weight (both graphs)");
  gen_cmd->add_option("--w-con", plant.contrast_weight, "Contrast edge weight (graph A only)");
  gen_cmd->add_option("--noise-blocks", plant.noise_blocks, "Dense one-sided noise blocks");
  gen_cmd->add_option("--noise-size", plant.noise_block_size, "Nodes per noise block");
  gen_cmd->add_option("--w-noise", plant.noise_weight, "Noise block edge weight");
  gen_cmd->add_option("--seed", plant.seed, "RNG seed");
  gen_cmd->add_option("--out", config.out_prefix, "Output prefix for <prefix>_a.tsv, _b.tsv, _truth.json");

  auto* split_cmd = app.add_subcommand("split", "Split a timestamped event list into two graphs");
  split_cmd->add_option("--events", config.events_path, "Event file (u v timestamp [magnitude])")->required();
  split_cmd->add_option("--split-at", config.split_at, "Events before this timestamp go to graph A")->required();
  split_cmd->add_option("--transform", config.transform, "Weight transform")
      ->check(CLI::IsMember({"identity", "log1"}));
  split_cmd->add_option("--out-a", config.out_a, "Output edge list for graph A")->required();
  split_cmd->add_option("--out-b", config.out_b, "Output edge list for graph B")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (mine_cmd->parsed()) return cmd_mine(config, out, err);
    if (check_cmd->parsed()) return cmd_check(config, out, solver);
    if (gen_cmd->parsed()) return cmd_gen(config, out);
    if (split_cmd->parsed()) return cmd_split(config, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return kExitInputError;
}

}  // namespace csm
