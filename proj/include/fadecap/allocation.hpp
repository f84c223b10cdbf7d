#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fadecap/channel.hpp"
#include "fadecap/errors.hpp"
#include "fadecap/muf.hpp"

namespace fadecap {

/// Optimal layered power profile over one coherent block.
///
/// `beta[k]` is the cumulative power fraction of layers 0..k, with
/// beta.back() == 1. `lambda[k]` and `log_lambda[k]` are the per-state capacity
/// factors (log_lambda is computed directly, not as log(lambda)).
/// `per_state_rate[k]` is the rate of layer k in nats.
struct PowerAllocation {
  std::vector<double> beta;
  std::vector<double> lambda;
  std::vector<double> log_lambda;
  std::vector<double> per_state_rate;
};

inline constexpr double kRouteAgreementTolerance = 1e-12;

namespace detail {

/// ln((1 + hi g) / (1 + lo g)) without cancellation for small increments.
inline double layer_rate(double g, double lo, double hi) {
  return std::log1p((hi - lo) * g / (1.0 + lo * g));
}

inline double prob_mass(const PreparedChannel& ch, std::size_t first, std::size_t last) {
  double m = 0.0;
  for (std::size_t j = first; j <= last; ++j) m += ch.probs[j];
  return m;
}

inline PowerAllocation degenerate_allocation() {
  return PowerAllocation{{1.0}, {1.0}, {0.0}, {0.0}};
}

}  // namespace detail

inline PowerAllocation optimal_allocation(const PreparedChannel& ch, const MufChain& chain) {
  if (ch.degenerate) return detail::degenerate_allocation();
  const std::size_t K = ch.size();
  const std::size_t s = chain.s;
  const std::size_t w = chain.w;
  const auto& pi = chain.pi;
  const auto& n = ch.inverse_gains;
  const auto& F = ch.cum_probs;

  PowerAllocation alloc;
  alloc.beta.assign(K, 0.0);
  for (std::size_t i = s; i < w; ++i) {
    for (std::size_t k = pi[i]; k < pi[i + 1]; ++k) alloc.beta[k] = chain.breakpoints[i + 1];
  }
  for (std::size_t k = pi[w]; k < K; ++k) alloc.beta[k] = 1.0;
  // Breakpoints of the chain are monotone up to rounding.
  for (std::size_t k = 1; k < K; ++k) alloc.beta[k] = std::max(alloc.beta[k], alloc.beta[k - 1]);

  // ln Lambda_k = ln((n_w + 1)/n_w) + ln(n_w X / (Y F_w)) with X/Y = F/n of the
  // head segment or dF/dn of a middle one.
  const std::size_t head = pi[s];
  const std::size_t tail = pi[w];
  const double log_top = std::log1p(ch.gains[tail]);
  const double scale_top = (n[tail] + 1.0) / F[tail];

  alloc.lambda.assign(K, 1.0);
  alloc.log_lambda.assign(K, 0.0);
  {
    const double ratio = (n[tail] * F[head]) / (n[head] * F[tail]);
    const double log_l = log_top + std::log(ratio);
    const double lambda = scale_top * F[head] / n[head];
    for (std::size_t k = 0; k <= head; ++k) {
      alloc.log_lambda[k] = log_l;
      alloc.lambda[k] = lambda;
    }
  }
  for (std::size_t m = s + 1; m <= w; ++m) {
    const std::size_t lo = pi[m - 1];
    const std::size_t hi = pi[m];
    const double dF = detail::prob_mass(ch, lo + 1, hi);
    const double dn = n[hi] - n[lo];
    const double ratio = (n[tail] * dF) / (dn * F[tail]);
    const double log_l = log_top + std::log(ratio);
    const double lambda = scale_top * dF / dn;
    for (std::size_t k = lo + 1; k <= hi; ++k) {
      alloc.log_lambda[k] = log_l;
      alloc.lambda[k] = lambda;
    }
  }

  alloc.per_state_rate.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    const double prev = k == 0 ? 0.0 : alloc.beta[k - 1];
    alloc.per_state_rate[k] = alloc.beta[k] > prev ? detail::layer_rate(ch.gains[k], prev, alloc.beta[k]) : 0.0;
  }
  return alloc;
}

/// Both closed forms of the one-block expected capacity.
struct ExpectedCapacityRoutes {
  double per_state;  // sum_k p_k ln Lambda_k
  double grouped;    // segment-grouped form over the active chain
};

inline ExpectedCapacityRoutes expected_capacity_routes(const PreparedChannel& ch, const MufChain& chain,
                                                       const PowerAllocation& alloc) {
  if (ch.degenerate) return {0.0, 0.0};
  double per_state = 0.0;
  for (std::size_t k = 0; k < ch.size(); ++k) per_state += ch.probs[k] * alloc.log_lambda[k];

  // F_s ln(F_s/n_s) + sum_m dF_m ln(dF_m/dn_m) + F_w ln((n_w + 1)/F_w), with
  // every logarithm of a ratio taken as a difference of logarithms and the
  // last one split as ln(n_w/F_w) + ln(1 + g_w).
  const auto& pi = chain.pi;
  const auto& n = ch.inverse_gains;
  const auto& F = ch.cum_probs;
  const std::size_t head = pi[chain.s];
  const std::size_t tail = pi[chain.w];
  double grouped = F[head] * (std::log(F[head]) - std::log(n[head]));
  for (std::size_t m = chain.s + 1; m <= chain.w; ++m) {
    const double dF = detail::prob_mass(ch, pi[m - 1] + 1, pi[m]);
    const double dn = n[pi[m]] - n[pi[m - 1]];
    grouped += dF * (std::log(dF) - std::log(dn));
  }
  grouped += F[tail] * (std::log(n[tail]) - std::log(F[tail]));
  grouped += F[tail] * std::log1p(ch.gains[tail]);
  return {per_state, grouped};
}

inline bool routes_agree(const ExpectedCapacityRoutes& r) {
  const double scale = std::max(std::abs(r.per_state), std::abs(r.grouped));
  return std::abs(r.per_state - r.grouped) <= kRouteAgreementTolerance * scale;
}

/// One-block expected capacity in nats. Throws ConsistencyError when the
/// two closed forms disagree beyond 1e-12 relative.
inline double expected_capacity(const PreparedChannel& ch, const MufChain& chain, const PowerAllocation& alloc) {
  const auto routes = expected_capacity_routes(ch, chain, alloc);
  if (!routes_agree(routes)) {
    throw ConsistencyError("expected_capacity: closed forms disagree (" + detail::format_value(routes.per_state) +
                           " vs " + detail::format_value(routes.grouped) + ")");
  }
  return routes.per_state;
}

/// Objective of the one-block power allocation program for a cumulative
/// power vector: sum_k F_k ln((1 + beta_k g_k) / (1 + beta_{k-1} g_k)).
inline double expected_rate_of(const PreparedChannel& ch, std::span<const double> beta) {
  if (beta.size() != ch.size()) {
    throw ValidationError("expected_rate_of: beta has " + std::to_string(beta.size()) + " entries, channel has " +
                          std::to_string(ch.size()) + " states");
  }
  double prev = 0.0;
  double rate = 0.0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    const double b = beta[k];
    if (!(b >= prev) || !(b <= 1.0)) {
      throw ValidationError("expected_rate_of: beta[" + std::to_string(k) + "] = " + detail::format_value(b) +
                            " violates 0 <= beta_1 <= ... <= beta_K <= 1");
    }
    if (b > prev && !ch.degenerate) rate += ch.cum_probs[k] * detail::layer_rate(ch.gains[k], prev, b);
    prev = b;
  }
  return rate;
}

/// Integral of u*(z) over [0, 1] taken segment by segment along the chain,
/// with each piece integrated in closed form.
inline double dominating_muf_integral(const PreparedChannel& ch, const MufChain& chain) {
  if (ch.degenerate) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < chain.segments(); ++i) {
    const double lo = std::max(chain.breakpoints[i], 0.0);
    const double hi = std::min(chain.breakpoints[i + 1], 1.0);
    if (hi <= lo) continue;
    const std::size_t k = chain.pi[i];
    total += ch.cum_probs[k] * std::log1p((hi - lo) / (ch.inverse_gains[k] + lo));
  }
  return total;
}

}  // namespace fadecap
