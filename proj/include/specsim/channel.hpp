#pragma once

#include <string>
#include <vector>

#include "specsim/rng.hpp"

namespace specsim {

struct ChannelOptions {
  // Permit channels whose expected rates differ by more than 1e-9 relative.
  // Doing so voids the ordinal-potential guarantee, so results produced from
  // such a model carry a warning.
  bool allow_unequal_means = false;
  std::string label;
};

// Finite-rate channel set: every channel draws its per-slot rate from a shared
// ascending rate list, each with its own state-probability vector. Stored
// probability vectors are normalized to sum to exactly 1 (as doubles); the raw
// input vectors are kept for reference. Immutable after construction.
class ChannelModel {
 public:
  using Options = ChannelOptions;

  // `probabilities` holds either a single template vector applied to every
  // channel, or exactly one vector per channel. Each raw vector must sum to 1
  // within 2e-3 absolute.
  ChannelModel(int n_channels, std::vector<double> rates,
               std::vector<std::vector<double>> probabilities, Options options = {});

  // HIPERLAN/2 rate levels {0,1,2,3,6} packets/slot with the built-in
  // state-probability preset (average SNR 6 dB, packet error rate 1e-3).
  static ChannelModel hiperlan2(int n_channels);

  int n_channels() const { return n_channels_; }
  int n_states() const { return static_cast<int>(rates_.size()); }
  const std::vector<double>& rates() const { return rates_; }
  const std::vector<double>& probabilities(int m) const;
  const std::vector<std::vector<double>>& raw_probabilities() const { return raw_probabilities_; }
  double max_rate() const { return rates_.back(); }
  bool equal_means() const { return equal_means_; }
  const std::string& label() const { return label_; }

  // s_bar_m: dot product of rates and channel m's probabilities.
  double expected_rate(int m) const;

  // The common expected rate s_bar. When unequal means are permitted this is
  // the minimum over channels, which keeps the throughput bound valid.
  double common_expected_rate() const { return min_expected_rate_; }

  // One realized rate per channel, drawn independently; channels are
  // independent of each other and of past slots.
  std::vector<double> sample_slot(Rng& rng) const;

 private:
  int n_channels_ = 0;
  std::vector<double> rates_;
  std::vector<std::vector<double>> probabilities_;      // normalized, one per channel
  std::vector<std::vector<double>> raw_probabilities_;  // as supplied
  std::vector<double> expected_rates_;
  double min_expected_rate_ = 0.0;
  bool equal_means_ = true;
  std::string label_;
};

}  // namespace specsim
