#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "fadecap/allocation.hpp"
#include "fadecap/channel.hpp"
#include "fadecap/muf.hpp"

namespace fadecap {

/// Everything analyze() derives from one distribution. Capacities are in nats.
///
/// lemma2_terms[k] = (n_k + 1) / (n_k Lambda_k) and lemma3_terms[k] =
/// p_k ln((n_k + 1)/n_k) / C_exp; both are evaluated on the regularized
/// channel when a zero gain was substituted (`lemma_terms_regularized`).
/// `active_states` lists pi_s..pi_w.
struct CapacityReport {
  double c_erg = 0.0;
  double c_exp = 0.0;
  double additive_gap = 0.0;
  double multiplicative_gap = 1.0;
  double entropy = 0.0;
  std::vector<double> lemma2_terms;
  std::vector<double> lemma3_terms;
  std::vector<std::size_t> active_states;
  bool lemma_terms_regularized = false;

  PreparedChannel channel;
  MufChain chain;
  PowerAllocation allocation;
  ExpectedCapacityRoutes routes{0.0, 0.0};
};

inline CapacityReport analyze(const PreparedChannel& ch) {
  CapacityReport r;
  r.channel = ch;
  r.c_erg = ergodic_capacity(ch);
  r.entropy = entropy(ch);

  if (ch.degenerate) {
    r.chain.pi = {0};
    r.chain.breakpoints = {-ch.inverse_gains[0], std::numeric_limits<double>::infinity()};
    r.chain.tolerances = {0.0, 0.0};
    r.allocation = optimal_allocation(ch, r.chain);
    r.c_exp = 0.0;
    r.additive_gap = 0.0;
    r.multiplicative_gap = 1.0;
    r.lemma2_terms = {1.0};
    r.lemma3_terms = {1.0};
    r.active_states = {0};
    return r;
  }

  r.chain = build_chain(ch);
  r.allocation = optimal_allocation(ch, r.chain);
  r.routes = expected_capacity_routes(ch, r.chain, r.allocation);
  r.c_exp = expected_capacity(ch, r.chain, r.allocation);

  const std::size_t K = ch.size();
  if (K == 1) {
    r.additive_gap = 0.0;
    r.multiplicative_gap = 1.0;
  } else {
    r.additive_gap = r.c_erg - r.c_exp;
    r.multiplicative_gap = r.c_erg / r.c_exp;
  }

  r.lemma_terms_regularized = ch.epsilon_applied.has_value();
  r.lemma2_terms.resize(K);
  r.lemma3_terms.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    const double log_ratio = std::log1p(ch.gains[k]);  // ln((n_k + 1)/n_k)
    r.lemma2_terms[k] = std::exp(log_ratio - r.allocation.log_lambda[k]);
    r.lemma3_terms[k] = ch.probs[k] * log_ratio / r.c_exp;
  }
  for (std::size_t i = r.chain.s; i <= r.chain.w; ++i) r.active_states.push_back(r.chain.pi[i]);
  return r;
}

/// prepare -> build_chain -> optimal_allocation -> expected_capacity, plus gaps.
inline CapacityReport analyze(const FadingDistribution& dist) { return analyze(prepare(dist)); }

}  // namespace fadecap
