#pragma once

#include <cstdint>
#include <string>

#include "specsim/game.hpp"
#include "specsim/learning.hpp"

namespace specsim {

// Genie view of a game instance: the time-varying channels are replaced by
// their expected rates. Baseline dynamics operate on this static game only
// and never sample slots.
struct GenieGame {
  InterferenceGraph graph;
  std::vector<double> expected_rates;  // one per channel

  static GenieGame from_game(const GameInstance& g);

  int n_players() const { return graph.n_nodes(); }
  int n_channels() const { return static_cast<int>(expected_rates.size()); }
  double utility(const ActionProfile& a, int n) const;
  double aggregate_throughput(const ActionProfile& a) const;
};

struct BaselineConfig {
  double beta = 10.0;        // inverse temperature; larger is greedier
  double update_prob = 0.1;  // per-player update probability (S-logit only)
  int iterations = 5000;
  uint64_t seed = 0;

  void validate() const;
};

// Spatial adaptive play with neighboring cooperation: one uniformly chosen
// player resamples its channel with probability proportional to
// exp(beta * w_n), where w_n is the local welfare u_n + sum of the neighbors'
// utilities, evaluated with all other actions fixed.
ActionProfile sap_nc_step(const GenieGame& gg, const ActionProfile& a, const BaselineConfig& cfg,
                          Rng& rng);

// Simultaneous log-linear learning: each player independently resamples with
// probability update_prob, proportional to exp(beta * u_n) over its own
// channels; everyone else keeps their channel.
ActionProfile s_logit_step(const GenieGame& gg, const ActionProfile& a, const BaselineConfig& cfg,
                           Rng& rng);

enum class BaselineKind { kSapNc, kSLogit };

std::string to_string(BaselineKind kind);

// Iterates the chosen step rule from a uniformly random initial profile for
// cfg.iterations steps and records the final profile.
TrialRecord run_baseline(const GenieGame& gg, BaselineKind kind, const BaselineConfig& cfg);

}  // namespace specsim
