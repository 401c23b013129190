#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "specsim/game.hpp"

namespace specsim {

using MixedStrategy = std::vector<double>;
// Per-SBS probability vector over channels; the learner state.
using MixedStrategyProfile = std::vector<MixedStrategy>;

struct LearningConfig {
  double step_size = 0.25;  // alpha in (0,1)
  // Per-SBS step sizes; empty means every SBS uses step_size.
  std::vector<double> per_player_step_sizes;
  int max_iterations = 20000;
  double convergence_threshold = 0.99;  // in (0.5, 1]
  uint64_t seed = 0;
  // Strategy snapshots every snapshot_stride-th iteration; full per-iteration
  // traces would dominate memory at 1000-trial scale.
  bool record_snapshots = false;
  int snapshot_stride = 10;
  bool record_rates = false;  // per-iteration sum of realized rates

  void validate() const;
};

// r_tilde = r / s_max, the payoff fed to the automaton. Rejects r outside
// [0, s_max].
double normalize_payoff(double rate, const ChannelModel& channels);

// Linear reward-inaction update: the chosen entry moves toward 1 by
// alpha*payoff*(1-q), every other entry shrinks by alpha*payoff*q. Output
// stays on the simplex; one-hot inputs are exact fixed points.
MixedStrategy sla_update(std::span<const double> q, int chosen, double payoff, double alpha);

struct ConvergenceCheck {
  bool converged = false;
  ActionProfile profile;  // per-SBS argmax channel
};

// Converged iff every SBS puts at least `threshold` mass on some channel.
ConvergenceCheck detect_convergence(const MixedStrategyProfile& q, double threshold);

struct StrategySnapshot {
  int iteration = 0;
  MixedStrategyProfile q;
};

struct TrialRecord {
  bool converged = false;
  int iterations = 0;  // slots executed until convergence or max_iterations
  ActionProfile final_profile;
  MixedStrategyProfile final_strategy;
  std::vector<StrategySnapshot> snapshots;
  std::vector<double> realized_rate_sums;
};

// One seeded trial of the distributed access loop: every SBS draws a channel
// from its mixed strategy, accesses it against the slot's realized rates, and
// reinforces on its own payoff alone. All SBSs update simultaneously each
// slot; no information is exchanged. Non-convergence within max_iterations is
// a recorded outcome, not an error.
TrialRecord run_trial(const GameInstance& g, const LearningConfig& cfg);

}  // namespace specsim
