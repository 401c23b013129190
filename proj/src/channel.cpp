#include "specsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace specsim {

namespace {

// Divide by the raw sum, then fold the floating-point residual into the
// largest entry until the stored vector sums to exactly 1.0.
std::vector<double> normalize_exact(std::vector<double> p) {
  const double raw_sum = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& v : p) v /= raw_sum;
  for (int pass = 0; pass < 64; ++pass) {
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    if (sum == 1.0) return p;
    auto it = std::max_element(p.begin(), p.end());
    *it += 1.0 - sum;
  }
  throw std::runtime_error("channel: probability normalization did not reach an exact unit sum");
}

}  // namespace

ChannelModel::ChannelModel(int n_channels, std::vector<double> rates,
                           std::vector<std::vector<double>> probabilities, Options options)
    : n_channels_(n_channels), rates_(std::move(rates)), label_(std::move(options.label)) {
  if (n_channels_ < 1) throw std::invalid_argument("channel: n_channels must be >= 1");
  if (rates_.empty()) throw std::invalid_argument("channel: rate set must be non-empty");
  for (size_t k = 0; k < rates_.size(); ++k) {
    if (rates_[k] < 0.0) throw std::invalid_argument("channel: rates must be non-negative");
    if (k > 0 && !(rates_[k] > rates_[k - 1]))
      throw std::invalid_argument("channel: rates must be strictly increasing");
  }

  if (probabilities.empty())
    throw std::invalid_argument("channel: at least one probability vector required");
  if (probabilities.size() != 1 && probabilities.size() != static_cast<size_t>(n_channels_))
    throw std::invalid_argument(
        "channel: probabilities must be one template vector or one vector per channel");

  raw_probabilities_ = probabilities;
  probabilities_.reserve(static_cast<size_t>(n_channels_));
  for (int m = 0; m < n_channels_; ++m) {
    const auto& raw = probabilities.size() == 1 ? probabilities[0]
                                                : probabilities[static_cast<size_t>(m)];
    if (raw.size() != rates_.size())
      throw std::invalid_argument("channel: probability vector length must match the rate set");
    double sum = 0.0;
    for (double v : raw) {
      if (v < 0.0) throw std::invalid_argument("channel: probabilities must be non-negative");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 2e-3)
      throw std::invalid_argument("channel: probabilities of channel " + std::to_string(m) +
                                  " sum to " + std::to_string(sum) +
                                  ", outside the 2e-3 tolerance around 1");
    // Template vectors are normalized once so all channels share bit-identical
    // probabilities (and therefore bit-identical expected rates).
    if (probabilities.size() == 1 && m > 0)
      probabilities_.push_back(probabilities_[0]);
    else
      probabilities_.push_back(normalize_exact(raw));
  }

  expected_rates_.reserve(static_cast<size_t>(n_channels_));
  for (int m = 0; m < n_channels_; ++m) {
    double s = 0.0;
    for (size_t k = 0; k < rates_.size(); ++k)
      s += probabilities_[static_cast<size_t>(m)][k] * rates_[k];
    expected_rates_.push_back(s);
  }
  const auto [lo, hi] = std::minmax_element(expected_rates_.begin(), expected_rates_.end());
  min_expected_rate_ = *lo;
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  equal_means_ = scale == 0.0 || (*hi - *lo) <= 1e-9 * scale;
  if (!equal_means_ && !options.allow_unequal_means)
    throw std::invalid_argument(
        "channel: expected rates differ across channels; set allow_unequal_means to override");
}

ChannelModel ChannelModel::hiperlan2(int n_channels) {
  // The published probability vector sums to 1.0001; it is treated as input
  // rounding noise and renormalized, with the raw vector retained.
  return ChannelModel(n_channels, {0.0, 1.0, 2.0, 3.0, 6.0},
                      {{0.2791, 0.2117, 0.2514, 0.2566, 0.0013}},
                      {.allow_unequal_means = false, .label = "hiperlan2,gamma=6dB,pe=1e-3"});
}

const std::vector<double>& ChannelModel::probabilities(int m) const {
  return probabilities_[static_cast<size_t>(m)];
}

double ChannelModel::expected_rate(int m) const {
  return expected_rates_[static_cast<size_t>(m)];
}

std::vector<double> ChannelModel::sample_slot(Rng& rng) const {
  std::vector<double> slot(static_cast<size_t>(n_channels_));
  for (int m = 0; m < n_channels_; ++m)
    slot[static_cast<size_t>(m)] = rates_[rng.categorical(probabilities(m))];
  return slot;
}

}  // namespace specsim
