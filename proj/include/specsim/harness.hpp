#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specsim/baselines.hpp"
#include "specsim/game.hpp"
#include "specsim/learning.hpp"

namespace specsim {

enum class Algorithm { kSla, kSapNc, kSLogit };

std::string to_string(Algorithm algo);
std::optional<Algorithm> algorithm_from_string(const std::string& name);

// Where the interference graph comes from: an explicit topology file, or the
// seeded generator. A generator seed left unset is derived from the master
// seed so experiments stay reproducible end to end.
struct TopologySpec {
  std::string file;
  int n = 15;
  Area area{1000.0, 1000.0};
  double radius = 300.0;
  std::optional<uint64_t> seed;
};

struct ChannelSpec {
  std::string preset;  // "hiperlan2", or empty for explicit rates/probabilities
  int m = 3;
  std::vector<double> rates;
  std::vector<std::vector<double>> probabilities;
  bool allow_unequal_means = false;
  std::string label;

  ChannelModel build() const;
};

struct SweepChannelPoint {
  std::string label;
  ChannelSpec channels;
};

// Exactly one axis may be populated: labeled channel presets (e.g. one per
// SNR point, sharing one topology) or network sizes (fresh seeded topology
// per point).
struct SweepSpec {
  std::vector<SweepChannelPoint> channel_points;
  std::vector<int> n_values;
};

struct ExperimentConfig {
  std::string label = "base";
  TopologySpec topology;
  ChannelSpec channels;
  std::vector<Algorithm> algorithms{Algorithm::kSla};
  LearningConfig sla;        // per-trial seeds are derived, the seed field is ignored
  BaselineConfig baseline;   // same
  int trials = 1000;
  uint64_t master_seed = 0;
  int workers = 1;           // 0 selects the hardware concurrency
  std::optional<SweepSpec> sweep;

  void validate() const;  // throws ConfigError naming the offending field
};

struct TrialRow {
  std::string algorithm;
  int trial_id = 0;
  bool converged = false;
  int iterations = 0;
  ActionProfile final_profile;
  double final_utility = 0.0;
  bool is_ne = false;
  bool failed = false;
  std::string error;
};

struct AlgorithmAggregate {
  std::string algorithm;
  int trials = 0;
  double mean_utility = 0.0;
  double std_utility = 0.0;       // sample standard deviation
  double convergence_rate = 0.0;  // non-convergence fraction is 1 minus this
  double mean_iterations = 0.0;
  double ne_rate = 0.0;
};

struct ExperimentResult {
  std::string point_label;
  double bound = 0.0;  // throughput lower bound of the instance
  std::string warning;
  std::vector<AlgorithmAggregate> aggregates;
  std::vector<TrialRow> rows;  // algorithm-major, trial-minor order

  std::string aggregate_csv(bool with_header = true) const;
  std::string trials_csv() const;
};

// Runs cfg.trials seeded trials per selected algorithm and aggregates.
// Deterministic for a fixed master seed regardless of worker count: every
// trial's stream is derived as mix_seed({master, point_index, trial,
// algorithm}), and aggregation runs in trial-index order.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int point_index = 0);

// One result per sweep point. Channel sweeps share the point-0 topology;
// scale sweeps generate a fresh seeded topology per point. A failing point is
// reported in its result's warning without aborting the remaining points.
std::vector<ExperimentResult> run_sweep(const ExperimentConfig& cfg);

// Writes aggregate.csv, a plot-ready long.csv and per-point trials_<label>.csv
// under out_dir; returns the written paths.
std::vector<std::string> emit_tables(std::span<const ExperimentResult> results,
                                     const std::string& out_dir);

}  // namespace specsim
