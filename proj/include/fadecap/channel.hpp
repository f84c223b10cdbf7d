#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fadecap/errors.hpp"

namespace fadecap {

/// Finite set of power-gain realizations with their probabilities, in any
/// order. Gains are receive SNRs at unit transmit power.
struct FadingDistribution {
  std::vector<double> gains;
  std::vector<double> probs;
};

/// A validated channel with states sorted by strictly decreasing gain.
///
/// `gains` are the values the optimizer works on: all strictly positive.
/// When the weakest realization was 0 it has been replaced by a small
/// positive value recorded in `epsilon_applied`; `original_gains` keeps the
/// realization as given. `degenerate` marks the single-state, zero-gain
/// channel, for which no positive substitute exists and every capacity is 0.
struct PreparedChannel {
  std::vector<double> gains;
  std::vector<double> original_gains;
  std::vector<double> probs;
  std::vector<double> inverse_gains;  // n_k = 1/g_k, ascending
  std::vector<double> cum_probs;      // F_k, strictly increasing
  std::optional<double> epsilon_applied;
  bool degenerate = false;

  std::size_t size() const { return gains.size(); }
};

inline constexpr double kProbabilitySumTolerance = 1e-9;
inline constexpr double kGainMergeTolerance = 1e-12;

namespace detail {

inline std::string format_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline bool gains_coincide(double a, double b) {
  return std::abs(a - b) <= kGainMergeTolerance * std::max(std::abs(a), std::abs(b));
}

inline void validate(const FadingDistribution& dist) {
  if (dist.gains.empty() && dist.probs.empty()) {
    throw ValidationError("gains: distribution has no states");
  }
  if (dist.gains.size() != dist.probs.size()) {
    throw ValidationError("gains/probs: length mismatch (" + std::to_string(dist.gains.size()) +
                          " gains, " + std::to_string(dist.probs.size()) + " probs)");
  }
  for (std::size_t k = 0; k < dist.gains.size(); ++k) {
    const double g = dist.gains[k];
    if (!std::isfinite(g) || g < 0.0) {
      throw ValidationError("gains[" + std::to_string(k) + "]: must be finite and nonnegative, got " +
                            format_value(g));
    }
  }
  double total = 0.0;
  for (std::size_t k = 0; k < dist.probs.size(); ++k) {
    const double p = dist.probs[k];
    if (!std::isfinite(p) || p <= 0.0) {
      throw ValidationError("probs[" + std::to_string(k) + "]: must be finite and positive, got " +
                            format_value(p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbabilitySumTolerance) {
    throw ValidationError("probs: not normalized, sum is " + format_value(total) +
                          " (must be 1 within 1e-9)");
  }
}

}  // namespace detail

/// Largest admissible substitute for a zero weakest gain: any positive value
/// strictly below min_{k<K} F_k / ((1 - F_k) + n_k) keeps that state inactive.
/// Expects `cum_probs` and `inverse_gains` of the K-1 positive states.
inline double zero_gain_substitution_bound(const std::vector<double>& cum_probs,
                                           const std::vector<double>& inverse_gains) {
  double bound = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < inverse_gains.size(); ++k) {
    bound = std::min(bound, cum_probs[k] / ((1.0 - cum_probs[k]) + inverse_gains[k]));
  }
  return bound;
}

/// Sorts, merges coincident gains, and regularizes a zero weakest gain.
inline PreparedChannel prepare(const FadingDistribution& dist) {
  detail::validate(dist);

  std::vector<std::size_t> order(dist.gains.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist.gains[a] > dist.gains[b]; });

  PreparedChannel ch;
  for (const std::size_t idx : order) {
    const double g = dist.gains[idx];
    const double p = dist.probs[idx];
    if (!ch.original_gains.empty() && detail::gains_coincide(ch.original_gains.back(), g)) {
      ch.probs.back() += p;
    } else {
      ch.original_gains.push_back(g);
      ch.probs.push_back(p);
    }
  }

  const std::size_t K = ch.original_gains.size();
  ch.gains = ch.original_gains;
  ch.cum_probs.resize(K);
  std::partial_sum(ch.probs.begin(), ch.probs.end(), ch.cum_probs.begin());

  if (ch.original_gains.back() == 0.0) {
    if (K == 1) {
      ch.degenerate = true;
      ch.inverse_gains = {std::numeric_limits<double>::infinity()};
      return ch;
    }
    std::vector<double> inv(K - 1);
    for (std::size_t k = 0; k + 1 < K; ++k) inv[k] = 1.0 / ch.gains[k];
    const double eps = 0.5 * zero_gain_substitution_bound(ch.cum_probs, inv);
    ch.gains.back() = eps;
    ch.epsilon_applied = eps;
  }

  ch.inverse_gains.resize(K);
  for (std::size_t k = 0; k < K; ++k) ch.inverse_gains[k] = 1.0 / ch.gains[k];
  return ch;
}

/// The distribution a prepared channel stands for (merged, sorted, with the
/// zero gain restored). prepare() of the result reproduces `ch`.
inline FadingDistribution to_distribution(const PreparedChannel& ch) {
  return FadingDistribution{ch.original_gains, ch.probs};
}

/// E[ln(1 + G)] in nats over the original gains.
inline double ergodic_capacity(const PreparedChannel& ch) {
  double c = 0.0;
  for (std::size_t k = 0; k < ch.size(); ++k) c += ch.probs[k] * std::log1p(ch.original_gains[k]);
  return c;
}

/// Shannon entropy of the state probabilities, nats.
inline double entropy(const PreparedChannel& ch) {
  double h = 0.0;
  for (const double p : ch.probs) h -= p * std::log(p);
  return std::max(h, 0.0);
}

}  // namespace fadecap
