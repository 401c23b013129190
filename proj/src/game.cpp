#include "specsim/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace specsim {

namespace {

// M^N, saturating at 2^63-1 so refusal messages stay meaningful.
uint64_t saturating_pow(uint64_t base, int exp) {
  uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<uint64_t>::max() / 2 / base) return std::numeric_limits<uint64_t>::max() / 2;
    r *= base;
  }
  return r;
}

// Neighbors of n per channel, given everyone else's action.
void count_neighbors_per_channel(const GameInstance& g, const ActionProfile& a, int n,
                                 std::vector<int>& counts) {
  counts.assign(static_cast<size_t>(g.n_channels()), 0);
  for (int j : g.graph.neighbors(n)) ++counts[static_cast<size_t>(a[static_cast<size_t>(j)])];
}

// Sign of u_n(to) - u_n(from) with other actions fixed, via cross
// multiplication: s_to*(1+c_from) vs s_from*(1+c_to). With equal means both
// sides share the factor s_bar, so the comparison reduces to the exact integer
// interference counts.
int utility_delta_sign(const ChannelModel& cm, int from, int c_from, int to, int c_to) {
  const double lhs = cm.expected_rate(to) * (1 + c_from);
  const double rhs = cm.expected_rate(from) * (1 + c_to);
  if (lhs > rhs) return 1;
  if (lhs < rhs) return -1;
  return 0;
}

// Lexicographic odometer over profiles; returns false after the last one.
bool advance(ActionProfile& a, int m) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (++a[static_cast<size_t>(i)] < m) return true;
    a[static_cast<size_t>(i)] = 0;
  }
  return false;
}

}  // namespace

GameInstance::GameInstance(InterferenceGraph g, ChannelModel c)
    : graph(std::move(g)), channels(std::move(c)) {}

void GameInstance::check_profile(const ActionProfile& a) const {
  if (a.size() != static_cast<size_t>(n_players()))
    throw std::invalid_argument("profile: length must equal the number of players");
  for (int ch : a)
    if (ch < 0 || ch >= n_channels())
      throw std::invalid_argument("profile: channel index out of range");
}

int interference_count(const GameInstance& g, const ActionProfile& a, int n) {
  int c = 0;
  const int my = a[static_cast<size_t>(n)];
  for (int j : g.graph.neighbors(n)) c += (a[static_cast<size_t>(j)] == my) ? 1 : 0;
  return c;
}

double utility(const GameInstance& g, const ActionProfile& a, int n) {
  const int c = interference_count(g, a, n);
  return g.channels.expected_rate(a[static_cast<size_t>(n)]) / (1 + c);
}

double aggregate_throughput(const GameInstance& g, const ActionProfile& a) {
  double sum = 0.0;
  for (int n = 0; n < g.n_players(); ++n) sum += utility(g, a, n);
  return sum;
}

double potential(const GameInstance& g, const ActionProfile& a) {
  int total = 0;
  for (int n = 0; n < g.n_players(); ++n) total += interference_count(g, a, n);
  return -static_cast<double>(total);
}

NashResult is_nash(const GameInstance& g, const ActionProfile& a) {
  g.check_profile(a);
  std::vector<int> counts;
  for (int n = 0; n < g.n_players(); ++n) {
    count_neighbors_per_channel(g, a, n, counts);
    const int cur = a[static_cast<size_t>(n)];
    const int c_cur = counts[static_cast<size_t>(cur)];
    for (int m = 0; m < g.n_channels(); ++m) {
      if (m == cur) continue;
      if (utility_delta_sign(g.channels, cur, c_cur, m, counts[static_cast<size_t>(m)]) > 0)
        return {false, DeviationWitness{n, m}};
    }
  }
  return {true, std::nullopt};
}

double NeReport::min_aggregate_utility() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : equilibria) best = std::min(best, e.aggregate_utility);
  return equilibria.empty() ? 0.0 : best;
}

NeReport enumerate_equilibria(const GameInstance& g, uint64_t cap) {
  const uint64_t total = saturating_pow(static_cast<uint64_t>(g.n_channels()), g.n_players());
  if (total > cap)
    throw std::runtime_error("enumeration refused: M^N = " + std::to_string(total) +
                             " exceeds the cap of " + std::to_string(cap));
  NeReport report;
  report.bound = throughput_lower_bound(g);
  ActionProfile a(static_cast<size_t>(g.n_players()), 0);
  do {
    ++report.profiles_checked;
    if (!is_nash(g, a).is_nash) continue;
    NeEntry entry;
    entry.profile = a;
    entry.utilities.reserve(a.size());
    for (int n = 0; n < g.n_players(); ++n) entry.utilities.push_back(utility(g, a, n));
    entry.aggregate_utility = aggregate_throughput(g, a);
    entry.potential = potential(g, a);
    report.equilibria.push_back(std::move(entry));
  } while (advance(a, g.n_channels()));
  return report;
}

double throughput_lower_bound(const GameInstance& g) {
  const double s_bar = g.channels.common_expected_rate();
  const double m = static_cast<double>(g.n_channels());
  double sum = 0.0;
  for (int n = 0; n < g.n_players(); ++n) sum += s_bar * m / (m + g.graph.degree(n));
  return sum;
}

OpgResult verify_ordinal_potential(const GameInstance& g, uint64_t cap) {
  const uint64_t profiles = saturating_pow(static_cast<uint64_t>(g.n_channels()), g.n_players());
  const uint64_t work = profiles * static_cast<uint64_t>(g.n_players()) *
                        static_cast<uint64_t>(g.n_channels());
  if (work > cap)
    throw std::runtime_error("verification refused: M^N * N * M = " + std::to_string(work) +
                             " exceeds the cap of " + std::to_string(cap));

  std::vector<int> counts;
  ActionProfile a(static_cast<size_t>(g.n_players()), 0);
  do {
    const double phi = potential(g, a);
    for (int n = 0; n < g.n_players(); ++n) {
      count_neighbors_per_channel(g, a, n, counts);
      const int cur = a[static_cast<size_t>(n)];
      const int c_cur = counts[static_cast<size_t>(cur)];
      for (int m = 0; m < g.n_channels(); ++m) {
        if (m == cur) continue;
        const int du_sign =
            utility_delta_sign(g.channels, cur, c_cur, m, counts[static_cast<size_t>(m)]);
        // Second route: recompute Phi on the deviated profile from scratch.
        ActionProfile b = a;
        b[static_cast<size_t>(n)] = m;
        const double dphi = potential(g, b) - phi;
        const int dphi_sign = dphi > 0.0 ? 1 : (dphi < 0.0 ? -1 : 0);
        if (du_sign != dphi_sign) {
          OpgViolation v;
          v.profile = a;
          v.player = n;
          v.from_channel = cur;
          v.to_channel = m;
          v.utility_delta = utility(g, b, n) - utility(g, a, n);
          v.potential_delta = dphi;
          return {false, std::move(v)};
        }
      }
    }
  } while (advance(a, g.n_channels()));
  return {true, std::nullopt};
}

double sample_instant_rate(const GameInstance& g, const ActionProfile& a,
                           const ChannelStateSlot& slot, int n, Rng& rng) {
  if (slot.size() != static_cast<size_t>(g.n_channels()))
    throw std::invalid_argument("slot: one realized rate per channel required");
  const int c = interference_count(g, a, n);
  const bool success = rng.bernoulli(1.0 / (1 + c));
  return success ? slot[static_cast<size_t>(a[static_cast<size_t>(n)])] : 0.0;
}

}  // namespace specsim
