#include "specsim/learning.hpp"

#include <algorithm>
#include <stdexcept>

namespace specsim {

void LearningConfig::validate() const {
  if (!(step_size > 0.0) || !(step_size < 1.0))
    throw std::invalid_argument("learning: step_size must lie in (0,1)");
  for (double a : per_player_step_sizes)
    if (!(a > 0.0) || !(a < 1.0))
      throw std::invalid_argument("learning: per-player step sizes must lie in (0,1)");
  if (max_iterations < 1) throw std::invalid_argument("learning: max_iterations must be >= 1");
  if (!(convergence_threshold > 0.5) || !(convergence_threshold <= 1.0))
    throw std::invalid_argument("learning: convergence_threshold must lie in (0.5, 1]");
  if (snapshot_stride < 1) throw std::invalid_argument("learning: snapshot_stride must be >= 1");
}

double normalize_payoff(double rate, const ChannelModel& channels) {
  const double s_max = channels.max_rate();
  if (rate < 0.0 || rate > s_max)
    throw std::invalid_argument("payoff: rate must lie in [0, max rate]");
  // Degenerate all-zero rate set: nothing can ever be received or reinforced.
  return s_max > 0.0 ? rate / s_max : 0.0;
}

MixedStrategy sla_update(std::span<const double> q, int chosen, double payoff, double alpha) {
  const double step = alpha * payoff;
  MixedStrategy out(q.size());
  for (size_t m = 0; m < q.size(); ++m) {
    out[m] = (static_cast<int>(m) == chosen) ? q[m] + step * (1.0 - q[m])
                                             : q[m] - step * q[m];
  }
  return out;
}

ConvergenceCheck detect_convergence(const MixedStrategyProfile& q, double threshold) {
  ConvergenceCheck check;
  check.converged = true;
  check.profile.reserve(q.size());
  for (const auto& qn : q) {
    const auto it = std::max_element(qn.begin(), qn.end());
    if (*it < threshold) check.converged = false;
    check.profile.push_back(static_cast<int>(it - qn.begin()));
  }
  return check;
}

TrialRecord run_trial(const GameInstance& g, const LearningConfig& cfg) {
  cfg.validate();
  const int n_players = g.n_players();
  const int n_channels = g.n_channels();
  const double s_max = g.channels.max_rate();
  if (!cfg.per_player_step_sizes.empty() &&
      cfg.per_player_step_sizes.size() != static_cast<size_t>(n_players))
    throw std::invalid_argument("learning: per-player step sizes must cover every SBS");
  const auto step_of = [&](int n) {
    return cfg.per_player_step_sizes.empty() ? cfg.step_size
                                             : cfg.per_player_step_sizes[static_cast<size_t>(n)];
  };
  Rng rng(cfg.seed);

  MixedStrategyProfile q(static_cast<size_t>(n_players),
                         MixedStrategy(static_cast<size_t>(n_channels), 1.0 / n_channels));
  ActionProfile actions(static_cast<size_t>(n_players), 0);

  TrialRecord record;
  if (cfg.record_snapshots) record.snapshots.push_back({0, q});

  for (int k = 0; k < cfg.max_iterations; ++k) {
    // a) channel selection from the current mixed strategies
    for (int n = 0; n < n_players; ++n)
      actions[static_cast<size_t>(n)] = static_cast<int>(rng.categorical(q[static_cast<size_t>(n)]));

    // b) channel access: per-channel realized rate, contention-gated per SBS
    const ChannelStateSlot slot = g.channels.sample_slot(rng);
    double rate_sum = 0.0;
    for (int n = 0; n < n_players; ++n) {
      const double r = sample_instant_rate(g, actions, slot, n, rng);
      rate_sum += r;
      // c) simultaneous strategy update from the own payoff only
      const double payoff = s_max > 0.0 ? r / s_max : 0.0;
      q[static_cast<size_t>(n)] = sla_update(q[static_cast<size_t>(n)],
                                             actions[static_cast<size_t>(n)], payoff, step_of(n));
    }

    record.iterations = k + 1;
    if (cfg.record_rates) record.realized_rate_sums.push_back(rate_sum);
    if (cfg.record_snapshots && (k + 1) % cfg.snapshot_stride == 0)
      record.snapshots.push_back({k + 1, q});

    auto check = detect_convergence(q, cfg.convergence_threshold);
    if (check.converged) {
      record.converged = true;
      record.final_profile = std::move(check.profile);
      break;
    }
  }

  // Non-converged trials still report their argmax profile, flagged.
  if (!record.converged)
    record.final_profile = detect_convergence(q, cfg.convergence_threshold).profile;
  record.final_strategy = std::move(q);
  return record;
}

}  // namespace specsim
