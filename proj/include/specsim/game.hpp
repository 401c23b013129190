#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "specsim/channel.hpp"
#include "specsim/rng.hpp"
#include "specsim/topology.hpp"

namespace specsim {

// One channel index per SBS; the pure-strategy state of the game.
using ActionProfile = std::vector<int>;

// Per-channel realized rates for one slot.
using ChannelStateSlot = std::vector<double>;

inline constexpr uint64_t kDefaultEnumerationCap = 10'000'000;

// The graphical spectrum-access game: an interference graph plus the channel
// model that supplies expected rates.
struct GameInstance {
  InterferenceGraph graph;
  ChannelModel channels;

  GameInstance(InterferenceGraph g, ChannelModel c);

  int n_players() const { return graph.n_nodes(); }
  int n_channels() const { return channels.n_channels(); }
  void check_profile(const ActionProfile& a) const;
};

// c_n: number of n's neighbors sharing n's channel.
int interference_count(const GameInstance& g, const ActionProfile& a, int n);

// u_n = s_bar_{a_n} / (1 + c_n), the expected achievable rate of player n.
double utility(const GameInstance& g, const ActionProfile& a, int n);

// Sum of utilities over all players.
double aggregate_throughput(const GameInstance& g, const ActionProfile& a);

// Potential Phi = -sum_n c_n = -2 * (number of monochromatic edges). Always <= 0.
double potential(const GameInstance& g, const ActionProfile& a);

struct DeviationWitness {
  int player = -1;
  int better_channel = -1;
};

struct NashResult {
  bool is_nash = false;
  // Strictly improving unilateral deviation, present iff !is_nash.
  std::optional<DeviationWitness> witness;
  explicit operator bool() const { return is_nash; }
};

// Pure-strategy Nash test with strict improvement: equal-utility deviations do
// not disqualify a profile. Under equal channel means ties are decided by
// comparing the integer interference counts, so tie semantics are exact.
NashResult is_nash(const GameInstance& g, const ActionProfile& a);

struct NeEntry {
  ActionProfile profile;
  std::vector<double> utilities;
  double aggregate_utility = 0.0;
  double potential = 0.0;
};

struct NeReport {
  std::vector<NeEntry> equilibria;  // lexicographic by profile
  double bound = 0.0;               // throughput_lower_bound of the instance
  uint64_t profiles_checked = 0;

  double min_aggregate_utility() const;
};

// Exact brute-force enumeration of all pure NE over the M^N profiles.
// Refuses (std::runtime_error naming M^N) when M^N exceeds the cap; the
// oracle never falls back to sampling.
NeReport enumerate_equilibria(const GameInstance& g, uint64_t cap = kDefaultEnumerationCap);

// sum_n s_bar * M / (M + |J_n|); every pure NE's aggregate utility is >= this.
double throughput_lower_bound(const GameInstance& g);

struct OpgViolation {
  ActionProfile profile;
  int player = -1;
  int from_channel = -1;
  int to_channel = -1;
  double utility_delta = 0.0;
  double potential_delta = 0.0;
};

struct OpgResult {
  bool is_ordinal_potential = false;
  std::optional<OpgViolation> violation;
  explicit operator bool() const { return is_ordinal_potential; }
};

// Exhaustively checks that every unilateral deviation satisfies the two-sided
// sign equivalence sign(du_n) == sign(dPhi) (including the zero case).
// Requires M^N * N * M <= cap.
OpgResult verify_ordinal_potential(const GameInstance& g, uint64_t cap = kDefaultEnumerationCap);

// Instantaneous rate of player n for one slot: the slot's realized rate on
// n's channel with probability 1/(1+c_n), else 0.
double sample_instant_rate(const GameInstance& g, const ActionProfile& a,
                           const ChannelStateSlot& slot, int n, Rng& rng);

}  // namespace specsim
