#include "specsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <functional>
#include <set>
#include <thread>

#include "specsim/errors.hpp"
#include "specsim/io.hpp"

namespace specsim {

namespace {

// Word separating topology streams from trial streams in seed derivation.
constexpr uint64_t kTopologyStream = 0x746f706f;  // "topo"

int resolve_workers(int workers, int n_tasks) {
  if (workers == 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(workers, 1, std::max(1, n_tasks));
}

// Static task partition by index stride; tasks must not throw.
void parallel_for(int n_tasks, int workers, const std::function<void(int)>& task) {
  workers = resolve_workers(workers, n_tasks);
  if (workers <= 1) {
    for (int i = 0; i < n_tasks; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1)) task(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string profile_to_string(const ActionProfile& a) {
  std::string out;
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) out += '|';
    out += std::to_string(a[i]);
  }
  return out;
}

InterferenceGraph resolve_topology(const TopologySpec& spec, uint64_t master_seed,
                                   int point_index) {
  if (!spec.file.empty()) return io::read_topology(spec.file);
  const uint64_t seed = spec.seed ? *spec.seed
                                  : mix_seed({master_seed, kTopologyStream,
                                              static_cast<uint64_t>(point_index)});
  return build_graph(generate_deployment(spec.n, spec.area, seed), spec.radius);
}

uint64_t algorithm_tag(Algorithm algo) { return static_cast<uint64_t>(algo) + 1; }

ExperimentResult run_resolved(const ExperimentConfig& cfg, std::string label, int point_index,
                              InterferenceGraph graph, ChannelModel channels) {
  const GameInstance game(std::move(graph), std::move(channels));
  const GenieGame genie = GenieGame::from_game(game);

  ExperimentResult result;
  result.point_label = std::move(label);
  result.bound = throughput_lower_bound(game);
  if (!game.channels.equal_means())
    result.warning =
        "channels have unequal expected rates; ordinal-potential guarantees do not apply";

  const int per_algo = cfg.trials;
  result.rows.resize(cfg.algorithms.size() * static_cast<size_t>(per_algo));

  const int n_tasks = static_cast<int>(result.rows.size());
  parallel_for(n_tasks, cfg.workers, [&](int index) {
    const size_t algo_index = static_cast<size_t>(index) / static_cast<size_t>(per_algo);
    const int trial = index % per_algo;
    const Algorithm algo = cfg.algorithms[algo_index];
    // Trial stream: mix of (master seed, sweep point, trial index, algorithm),
    // so any single trial can be reproduced in isolation.
    const uint64_t seed = mix_seed({cfg.master_seed, static_cast<uint64_t>(point_index),
                                    static_cast<uint64_t>(trial), algorithm_tag(algo)});
    TrialRow row;
    row.algorithm = to_string(algo);
    row.trial_id = trial;
    try {
      TrialRecord record;
      if (algo == Algorithm::kSla) {
        LearningConfig lc = cfg.sla;
        lc.seed = seed;
        record = run_trial(game, lc);
      } else {
        BaselineConfig bc = cfg.baseline;
        bc.seed = seed;
        record = run_baseline(genie, algo == Algorithm::kSapNc ? BaselineKind::kSapNc
                                                               : BaselineKind::kSLogit,
                              bc);
      }
      row.converged = record.converged;
      row.iterations = record.iterations;
      row.final_profile = std::move(record.final_profile);
      row.final_utility = aggregate_throughput(game, row.final_profile);
      row.is_ne = is_nash(game, row.final_profile).is_nash;
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    result.rows[static_cast<size_t>(index)] = std::move(row);
  });

  // Aggregation runs in row order after the pool joins, so the output is
  // independent of trial completion order and worker count.
  for (size_t algo_index = 0; algo_index < cfg.algorithms.size(); ++algo_index) {
    AlgorithmAggregate agg;
    agg.algorithm = to_string(cfg.algorithms[algo_index]);
    agg.trials = per_algo;
    double sum = 0.0, sum_iters = 0.0;
    int ok = 0, converged = 0, ne = 0;
    const size_t begin = algo_index * static_cast<size_t>(per_algo);
    for (size_t i = begin; i < begin + static_cast<size_t>(per_algo); ++i) {
      const TrialRow& row = result.rows[i];
      if (row.failed) continue;
      ++ok;
      sum += row.final_utility;
      sum_iters += row.iterations;
      converged += row.converged ? 1 : 0;
      ne += row.is_ne ? 1 : 0;
    }
    agg.mean_utility = ok ? sum / ok : 0.0;
    double sq = 0.0;
    for (size_t i = begin; i < begin + static_cast<size_t>(per_algo); ++i) {
      const TrialRow& row = result.rows[i];
      if (!row.failed) sq += (row.final_utility - agg.mean_utility) *
                             (row.final_utility - agg.mean_utility);
    }
    agg.std_utility = ok > 1 ? std::sqrt(sq / (ok - 1)) : 0.0;
    agg.mean_iterations = ok ? sum_iters / ok : 0.0;
    agg.convergence_rate = per_algo ? static_cast<double>(converged) / per_algo : 0.0;
    agg.ne_rate = per_algo ? static_cast<double>(ne) / per_algo : 0.0;
    result.aggregates.push_back(std::move(agg));
  }
  return result;
}

}  // namespace

std::string to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::kSla: return "sla";
    case Algorithm::kSapNc: return "sap_nc";
    case Algorithm::kSLogit: return "s_logit";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_string(const std::string& name) {
  if (name == "sla") return Algorithm::kSla;
  if (name == "sap_nc") return Algorithm::kSapNc;
  if (name == "s_logit") return Algorithm::kSLogit;
  return std::nullopt;
}

ChannelModel ChannelSpec::build() const {
  if (preset == "hiperlan2") return ChannelModel::hiperlan2(m);
  if (!preset.empty()) throw ConfigError("channels.preset", "unknown preset `" + preset + "`");
  try {
    return ChannelModel(m, rates, probabilities,
                        {.allow_unequal_means = allow_unequal_means, .label = label});
  } catch (const std::invalid_argument& e) {
    throw ConfigError("channels", e.what());
  }
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError("trials", "must be >= 1");
  if (workers < 0) throw ConfigError("workers", "must be >= 0");
  if (algorithms.empty()) throw ConfigError("algorithms", "at least one algorithm required");
  if (topology.file.empty()) {
    if (topology.n < 1) throw ConfigError("topology.n", "must be >= 1");
    if (!(topology.area.width > 0.0) || !(topology.area.height > 0.0))
      throw ConfigError("topology.area", "dimensions must be positive");
    if (!(topology.radius > 0.0)) throw ConfigError("topology.radius", "must be positive");
  }
  try {
    sla.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("sla", e.what());
  }
  try {
    baseline.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("baseline", e.what());
  }
  if (sweep) {
    const bool has_channels = !sweep->channel_points.empty();
    const bool has_scale = !sweep->n_values.empty();
    if (has_channels == has_scale)
      throw ConfigError("sweep", "exactly one axis (channels or scale) must be populated");
    std::set<std::string> labels;
    if (has_channels) {
      for (const auto& p : sweep->channel_points)
        if (!labels.insert(p.label).second)
          throw ConfigError("sweep.points", "duplicate label `" + p.label + "`");
    } else {
      for (int n : sweep->n_values) {
        if (n < 1) throw ConfigError("sweep.points", "network sizes must be >= 1");
        if (!labels.insert("n=" + std::to_string(n)).second)
          throw ConfigError("sweep.points", "duplicate size " + std::to_string(n));
      }
    }
  }
}

std::string ExperimentResult::aggregate_csv(bool with_header) const {
  std::string out;
  if (with_header) out = "point_label,algorithm,trials,mean_U,std_U,conv_rate,mean_iters,ne_rate,bound\n";
  for (const auto& a : aggregates) {
    out += point_label + ',' + a.algorithm + ',' + std::to_string(a.trials) + ',' +
           io::format_double(a.mean_utility) + ',' + io::format_double(a.std_utility) + ',' +
           io::format_double(a.convergence_rate) + ',' + io::format_double(a.mean_iterations) +
           ',' + io::format_double(a.ne_rate) + ',' + io::format_double(bound) + '\n';
  }
  return out;
}

std::string ExperimentResult::trials_csv() const {
  std::string out = "algorithm,trial_id,converged,iterations,final_profile,final_U,is_ne\n";
  for (const auto& row : rows) {
    out += row.algorithm + ',' + std::to_string(row.trial_id) + ',' +
           (row.converged ? "1" : "0") + ',' + std::to_string(row.iterations) + ',' +
           profile_to_string(row.final_profile) + ',' + io::format_double(row.final_utility) +
           ',' + (row.is_ne ? "1" : "0") + '\n';
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int point_index) {
  cfg.validate();
  return run_resolved(cfg, cfg.label, point_index,
                      resolve_topology(cfg.topology, cfg.master_seed, point_index),
                      cfg.channels.build());
}

std::vector<ExperimentResult> run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!cfg.sweep) throw ConfigError("sweep", "sweep axis required");
  std::vector<ExperimentResult> results;

  if (!cfg.sweep->channel_points.empty()) {
    // One shared topology across channel points.
    const InterferenceGraph graph = resolve_topology(cfg.topology, cfg.master_seed, 0);
    for (size_t i = 0; i < cfg.sweep->channel_points.size(); ++i) {
      const auto& point = cfg.sweep->channel_points[i];
      try {
        results.push_back(run_resolved(cfg, point.label, static_cast<int>(i), graph,
                                       point.channels.build()));
      } catch (const std::exception& e) {
        ExperimentResult failed;
        failed.point_label = point.label;
        failed.warning = std::string("point failed: ") + e.what();
        results.push_back(std::move(failed));
      }
    }
    return results;
  }

  for (size_t i = 0; i < cfg.sweep->n_values.size(); ++i) {
    const int n = cfg.sweep->n_values[i];
    TopologySpec topo = cfg.topology;
    topo.file.clear();
    topo.n = n;
    const std::string label = "n=" + std::to_string(n);
    try {
      results.push_back(run_resolved(cfg, label, static_cast<int>(i),
                                     resolve_topology(topo, cfg.master_seed, static_cast<int>(i)),
                                     cfg.channels.build()));
    } catch (const std::exception& e) {
      ExperimentResult failed;
      failed.point_label = label;
      failed.warning = std::string("point failed: ") + e.what();
      results.push_back(std::move(failed));
    }
  }
  return results;
}

std::vector<std::string> emit_tables(std::span<const ExperimentResult> results,
                                     const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  fs::create_directories(out_dir);

  std::string aggregate = "point_label,algorithm,trials,mean_U,std_U,conv_rate,mean_iters,ne_rate,bound\n";
  std::string long_table = "point_label,algorithm,metric,value\n";
  for (const auto& r : results) {
    aggregate += r.aggregate_csv(false);
    for (const auto& a : r.aggregates) {
      const std::pair<const char*, double> metrics[] = {
          {"mean_U", a.mean_utility},     {"std_U", a.std_utility},
          {"conv_rate", a.convergence_rate}, {"mean_iters", a.mean_iterations},
          {"ne_rate", a.ne_rate},         {"bound", r.bound},
      };
      for (const auto& [name, value] : metrics)
        long_table += r.point_label + ',' + a.algorithm + ',' + name + ',' +
                      io::format_double(value) + '\n';
    }
  }

  const std::string aggregate_path = (fs::path(out_dir) / "aggregate.csv").string();
  io::write_text_file(aggregate_path, aggregate);
  written.push_back(aggregate_path);

  const std::string long_path = (fs::path(out_dir) / "long.csv").string();
  io::write_text_file(long_path, long_table);
  written.push_back(long_path);

  for (const auto& r : results) {
    const std::string path = (fs::path(out_dir) / ("trials_" + r.point_label + ".csv")).string();
    io::write_text_file(path, r.trials_csv());
    written.push_back(path);
  }
  return written;
}

}  // namespace specsim
