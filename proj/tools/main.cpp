// specsim command-line front end: topology generation, equilibrium analysis,
// learning runs, baseline comparison and sweep experiments.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specsim/baselines.hpp"
#include "specsim/errors.hpp"
#include "specsim/game.hpp"
#include "specsim/harness.hpp"
#include "specsim/io.hpp"
#include "specsim/learning.hpp"

namespace {

using nlohmann::json;
using namespace specsim;

struct GlobalOptions {
  uint64_t seed = 0;
  int workers = 1;
  std::string out_dir = ".";
};

std::string join_path(const std::string& dir, const std::string& file) {
  if (file.empty() || file.front() == '/' || dir.empty() || dir == ".") return file;
  return dir + "/" + file;
}

struct ChannelArgs {
  std::string file;
  std::string preset = "hiperlan2";
  int m = 3;

  ChannelModel build() const {
    if (!file.empty()) {
      ChannelSpec spec = io::read_channel_spec(file);
      return spec.build();
    }
    ChannelSpec spec;
    spec.preset = preset;
    spec.m = m;
    return spec.build();
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--channels", file, "channel config file (JSON)");
    cmd->add_option("--preset", preset, "built-in channel preset")->default_str("hiperlan2");
    cmd->add_option("--m", m, "number of channels")->default_val(3);
  }
};

int cmd_gen_topology(const GlobalOptions& global, int n, double width, double height,
                     double radius, const std::string& out) {
  const Deployment d = generate_deployment(n, {width, height}, global.seed);
  const InterferenceGraph g = build_graph(d, radius);
  io::write_topology(join_path(global.out_dir, out), d, g);
  std::cout << "n=" << n << " edges=" << g.edges().size() << " radius=" << radius << "\n";
  return 0;
}

int cmd_analyze(const GlobalOptions& global, const std::string& topology,
                const ChannelArgs& channels, uint64_t cap, const std::string& out) {
  const GameInstance game(io::read_topology(topology), channels.build());
  const NeReport report = enumerate_equilibria(game, cap);
  if (!out.empty())
    io::write_text_file(join_path(global.out_dir, out), io::ne_report_to_json(report).dump(2) + "\n");
  std::cout << "ne_count=" << report.equilibria.size()
            << ",min_U=" << io::format_double(report.min_aggregate_utility())
            << ",bound=" << io::format_double(report.bound) << "\n";
  return 0;
}

int cmd_bound(const std::string& topology, const ChannelArgs& channels) {
  const GameInstance game(io::read_topology(topology), channels.build());
  std::cout << io::format_double(throughput_lower_bound(game)) << "\n";
  return 0;
}

ExperimentConfig make_run_config(const GlobalOptions& global, const std::string& topology,
                                 const ChannelArgs& channels, int trials) {
  ExperimentConfig cfg;
  cfg.topology.file = topology;
  cfg.channels.preset = channels.preset;
  cfg.channels.m = channels.m;
  if (!channels.file.empty()) cfg.channels = io::read_channel_spec(channels.file);
  cfg.trials = trials;
  cfg.master_seed = global.seed;
  cfg.workers = global.workers;
  return cfg;
}

int cmd_run(const GlobalOptions& global, const std::string& topology,
            const ChannelArgs& channels, const LearningConfig& sla, int trials,
            const std::string& out) {
  ExperimentConfig cfg = make_run_config(global, topology, channels, trials);
  cfg.algorithms = {Algorithm::kSla};
  cfg.sla = sla;
  const ExperimentResult result = run_experiment(cfg);

  std::string csv = "trial_id,converged,iterations,final_profile,final_U,is_ne\n";
  for (const auto& row : result.rows) {
    std::string profile;
    for (size_t i = 0; i < row.final_profile.size(); ++i) {
      if (i) profile += '|';
      profile += std::to_string(row.final_profile[i]);
    }
    csv += std::to_string(row.trial_id) + ',' + (row.converged ? "1" : "0") + ',' +
           std::to_string(row.iterations) + ',' + profile + ',' +
           io::format_double(row.final_utility) + ',' + (row.is_ne ? "1" : "0") + '\n';
  }
  io::write_text_file(join_path(global.out_dir, out), csv);
  std::cout << result.aggregate_csv();
  if (!result.warning.empty()) std::cerr << "warning: " << result.warning << "\n";
  return 0;
}

int cmd_compare(const GlobalOptions& global, const std::string& topology,
                const ChannelArgs& channels, const LearningConfig& sla,
                const BaselineConfig& baseline, int trials, const std::string& out) {
  ExperimentConfig cfg = make_run_config(global, topology, channels, trials);
  cfg.algorithms = {Algorithm::kSla, Algorithm::kSapNc, Algorithm::kSLogit};
  cfg.sla = sla;
  cfg.baseline = baseline;
  const ExperimentResult result = run_experiment(cfg);

  std::string csv = "algorithm,trial_id,final_U,is_ne,iterations\n";
  for (const auto& row : result.rows)
    csv += row.algorithm + ',' + std::to_string(row.trial_id) + ',' +
           io::format_double(row.final_utility) + ',' + (row.is_ne ? "1" : "0") + ',' +
           std::to_string(row.iterations) + '\n';
  io::write_text_file(join_path(global.out_dir, out), csv);
  std::cout << result.aggregate_csv();
  if (!result.warning.empty()) std::cerr << "warning: " << result.warning << "\n";
  return 0;
}

int cmd_sweep(const GlobalOptions& global, const std::string& config_path, bool seed_set,
              bool workers_set) {
  ExperimentConfig cfg = io::read_config(config_path);
  if (seed_set) cfg.master_seed = global.seed;
  if (workers_set) cfg.workers = global.workers;
  const std::vector<ExperimentResult> results =
      cfg.sweep ? run_sweep(cfg) : std::vector<ExperimentResult>{run_experiment(cfg)};
  for (const auto& path : emit_tables(results, global.out_dir))
    std::cout << "wrote " << path << "\n";
  for (const auto& r : results)
    if (!r.warning.empty()) std::cerr << "warning: " << r.point_label << ": " << r.warning << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectrum access game simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "master RNG seed")->default_val(0);
  auto* workers_opt = app.add_option("--workers", global.workers,
                                     "worker threads (0 = hardware concurrency)");
  app.add_option("--out-dir", global.out_dir, "directory for output files")->default_str(".");

  // gen-topology
  auto* gen = app.add_subcommand("gen-topology", "generate a random deployment and its graph");
  int gen_n = 15;
  double gen_width = 1000.0, gen_height = 1000.0, gen_radius = 300.0;
  std::string gen_out = "topology.json";
  gen->add_option("--n", gen_n, "number of SBSs")->default_val(15);
  gen->add_option("--width", gen_width, "area width in meters")->default_val(1000.0);
  gen->add_option("--height", gen_height, "area height in meters")->default_val(1000.0);
  gen->add_option("--radius", gen_radius, "interference range d0 in meters")->default_val(300.0);
  gen->add_option("--out", gen_out, "output file")->default_str("topology.json");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "enumerate pure Nash equilibria");
  std::string analyze_topology;
  ChannelArgs analyze_channels;
  uint64_t analyze_cap = kDefaultEnumerationCap;
  std::string analyze_out = "ne_report.json";
  analyze->add_option("--topology", analyze_topology, "topology file")->required();
  analyze_channels.attach(analyze);
  analyze->add_option("--cap", analyze_cap, "profile enumeration cap");
  analyze->add_option("--out", analyze_out, "report file (empty to skip)");

  // bound
  auto* bound = app.add_subcommand("bound", "print the NE throughput lower bound");
  std::string bound_topology;
  ChannelArgs bound_channels;
  bound->add_option("--topology", bound_topology, "topology file")->required();
  bound_channels.attach(bound);

  // run
  auto* run = app.add_subcommand("run", "run stochastic-learning trials");
  std::string run_topology, run_out = "trials.csv";
  ChannelArgs run_channels;
  LearningConfig run_sla;
  int run_trials = 1000;
  run->add_option("--topology", run_topology, "topology file")->required();
  run_channels.attach(run);
  run->add_option("--alpha", run_sla.step_size, "learning step size")->default_val(0.25);
  run->add_option("--trials", run_trials, "number of trials")->default_val(1000);
  run->add_option("--max-iters", run_sla.max_iterations, "iteration cap per trial")
      ->default_val(20000);
  run->add_option("--threshold", run_sla.convergence_threshold, "convergence threshold")
      ->default_val(0.99);
  run->add_option("--out", run_out, "per-trial CSV path")->default_str("trials.csv");

  // compare
  auto* compare = app.add_subcommand("compare", "SLA vs genie-aided SAP-NC and S-logit");
  std::string compare_topology, compare_out = "compare.csv";
  ChannelArgs compare_channels;
  LearningConfig compare_sla;
  BaselineConfig compare_baseline;
  int compare_trials = 1000;
  compare->add_option("--topology", compare_topology, "topology file")->required();
  compare_channels.attach(compare);
  compare->add_option("--alpha", compare_sla.step_size, "SLA step size")->default_val(0.25);
  compare->add_option("--max-iters", compare_sla.max_iterations, "SLA iteration cap")
      ->default_val(20000);
  compare->add_option("--threshold", compare_sla.convergence_threshold, "SLA threshold")
      ->default_val(0.99);
  compare->add_option("--beta", compare_baseline.beta, "baseline inverse temperature")
      ->default_val(10.0);
  compare->add_option("--p", compare_baseline.update_prob, "S-logit update probability")
      ->default_val(0.1);
  compare->add_option("--iterations", compare_baseline.iterations, "baseline iterations")
      ->default_val(5000);
  compare->add_option("--trials", compare_trials, "number of trials")->default_val(1000);
  compare->add_option("--out", compare_out, "CSV path")->default_str("compare.csv");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run an experiment config, with optional sweep axis");
  std::string sweep_config;
  sweep->add_option("--config", sweep_config, "experiment config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0)
      std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return app.exit(e);
  }

  try {
    if (gen->parsed())
      return cmd_gen_topology(global, gen_n, gen_width, gen_height, gen_radius, gen_out);
    if (analyze->parsed())
      return cmd_analyze(global, analyze_topology, analyze_channels, analyze_cap, analyze_out);
    if (bound->parsed()) return cmd_bound(bound_topology, bound_channels);
    if (run->parsed())
      return cmd_run(global, run_topology, run_channels, run_sla, run_trials, run_out);
    if (compare->parsed())
      return cmd_compare(global, compare_topology, compare_channels, compare_sla,
                         compare_baseline, compare_trials, compare_out);
    if (sweep->parsed())
      return cmd_sweep(global, sweep_config, app.count("--seed") > 0, workers_opt->count() > 0);
  } catch (const ConfigError& e) {
    std::cerr << json{{"error", e.what()}, {"field", e.field}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
