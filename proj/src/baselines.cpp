#include "specsim/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specsim {

namespace {

// Softmax draw over exp(beta * (score - max)); beta = 0 degenerates to a
// uniform choice.
int softmax_index(const std::vector<double>& scores, double beta, Rng& rng) {
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> weights(scores.size());
  double total = 0.0;
  for (size_t m = 0; m < scores.size(); ++m) {
    weights[m] = std::exp(beta * (scores[m] - top));
    total += weights[m];
  }
  for (auto& w : weights) w /= total;
  return static_cast<int>(rng.categorical(weights));
}

}  // namespace

GenieGame GenieGame::from_game(const GameInstance& g) {
  GenieGame gg;
  gg.graph = g.graph;
  gg.expected_rates.reserve(static_cast<size_t>(g.n_channels()));
  for (int m = 0; m < g.n_channels(); ++m) gg.expected_rates.push_back(g.channels.expected_rate(m));
  return gg;
}

double GenieGame::utility(const ActionProfile& a, int n) const {
  const int my = a[static_cast<size_t>(n)];
  int c = 0;
  for (int j : graph.neighbors(n)) c += (a[static_cast<size_t>(j)] == my) ? 1 : 0;
  return expected_rates[static_cast<size_t>(my)] / (1 + c);
}

double GenieGame::aggregate_throughput(const ActionProfile& a) const {
  double sum = 0.0;
  for (int n = 0; n < n_players(); ++n) sum += utility(a, n);
  return sum;
}

void BaselineConfig::validate() const {
  if (!(beta >= 0.0)) throw std::invalid_argument("baseline: beta must be >= 0");
  if (!(update_prob > 0.0) || !(update_prob <= 1.0))
    throw std::invalid_argument("baseline: update_prob must lie in (0,1]");
  if (iterations < 0) throw std::invalid_argument("baseline: iterations must be >= 0");
}

ActionProfile sap_nc_step(const GenieGame& gg, const ActionProfile& a, const BaselineConfig& cfg,
                          Rng& rng) {
  ActionProfile next = a;
  const int n = static_cast<int>(rng.uniform_index(static_cast<size_t>(gg.n_players())));
  std::vector<double> welfare(static_cast<size_t>(gg.n_channels()));
  for (int m = 0; m < gg.n_channels(); ++m) {
    next[static_cast<size_t>(n)] = m;
    double w = gg.utility(next, n);
    for (int j : gg.graph.neighbors(n)) w += gg.utility(next, j);
    welfare[static_cast<size_t>(m)] = w;
  }
  next[static_cast<size_t>(n)] = softmax_index(welfare, cfg.beta, rng);
  return next;
}

ActionProfile s_logit_step(const GenieGame& gg, const ActionProfile& a, const BaselineConfig& cfg,
                           Rng& rng) {
  ActionProfile next = a;
  ActionProfile candidate = a;
  std::vector<double> scores(static_cast<size_t>(gg.n_channels()));
  for (int n = 0; n < gg.n_players(); ++n) {
    if (!rng.bernoulli(cfg.update_prob)) continue;
    // Own utility only, against the others' current (pre-update) actions.
    for (int m = 0; m < gg.n_channels(); ++m) {
      candidate[static_cast<size_t>(n)] = m;
      scores[static_cast<size_t>(m)] = gg.utility(candidate, n);
    }
    candidate[static_cast<size_t>(n)] = a[static_cast<size_t>(n)];
    next[static_cast<size_t>(n)] = softmax_index(scores, cfg.beta, rng);
  }
  return next;
}

std::string to_string(BaselineKind kind) {
  return kind == BaselineKind::kSapNc ? "sap_nc" : "s_logit";
}

TrialRecord run_baseline(const GenieGame& gg, BaselineKind kind, const BaselineConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  ActionProfile a(static_cast<size_t>(gg.n_players()), 0);
  for (auto& ch : a) ch = static_cast<int>(rng.uniform_index(static_cast<size_t>(gg.n_channels())));
  for (int k = 0; k < cfg.iterations; ++k) {
    a = (kind == BaselineKind::kSapNc) ? sap_nc_step(gg, a, cfg, rng)
                                       : s_logit_step(gg, a, cfg, rng);
  }
  TrialRecord record;
  record.converged = true;
  record.iterations = cfg.iterations;
  record.final_profile = std::move(a);
  return record;
}

}  // namespace specsim
