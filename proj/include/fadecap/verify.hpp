#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "fadecap/allocation.hpp"
#include "fadecap/channel.hpp"
#include "fadecap/fading_paper.hpp"
#include "fadecap/gaps.hpp"
#include "fadecap/muf.hpp"

namespace fadecap {

// Deterministic invariant checks over an analyzed channel. They return the
// list of violated properties; an empty list means every property holds.

inline constexpr double kBoundTolerance = 1e-9;
inline constexpr double kEnvelopeRelativeTolerance = 1e-12;
inline constexpr std::size_t kEnvelopeSamples = 100;

struct Violation {
  std::string check;
  std::string detail;
};

using Violations = std::vector<Violation>;

namespace detail {

inline void expect(Violations& out, bool ok, std::string check, const std::string& what) {
  if (!ok) out.push_back({std::move(check), what});
}

}  // namespace detail

/// Non-negative gaps, converse bounds ln K and K, and the per-state lemma
/// bounds (n_k+1)/(n_k Lambda_k) <= 1/p_k and p_k ln(1+g_k)/C_exp <= 1.
inline Violations check_gap_bounds(const CapacityReport& r) {
  Violations v;
  const double K = static_cast<double>(r.channel.size());
  detail::expect(v, r.additive_gap >= -kBoundTolerance, "additive_gap_nonnegative", detail::format_value(r.additive_gap));
  detail::expect(v, r.multiplicative_gap >= 1.0 - kBoundTolerance, "multiplicative_gap_at_least_one",
                 detail::format_value(r.multiplicative_gap));
  detail::expect(v, r.additive_gap <= std::log(K) + kBoundTolerance, "additive_gap_at_most_lnK",
                 detail::format_value(r.additive_gap));
  detail::expect(v, r.multiplicative_gap <= K + kBoundTolerance, "multiplicative_gap_at_most_K",
                 detail::format_value(r.multiplicative_gap));
  detail::expect(v, r.entropy <= std::log(K) + kBoundTolerance, "entropy_at_most_lnK", detail::format_value(r.entropy));
  for (std::size_t k = 0; k < r.lemma2_terms.size(); ++k) {
    detail::expect(v, r.lemma2_terms[k] <= 1.0 / r.channel.probs[k] + kBoundTolerance, "lemma2_term",
                   "state " + std::to_string(k) + ": " + detail::format_value(r.lemma2_terms[k]));
    detail::expect(v, r.lemma3_terms[k] <= 1.0 + kBoundTolerance, "lemma3_term",
                   "state " + std::to_string(k) + ": " + detail::format_value(r.lemma3_terms[k]));
  }
  return v;
}

inline Violations check_routes(const CapacityReport& r) {
  Violations v;
  detail::expect(v, routes_agree(r.routes), "closed_forms_agree",
                 detail::format_value(r.routes.per_state) + " vs " + detail::format_value(r.routes.grouped));
  return v;
}

/// The three ordering properties of the chain breakpoints, each allowed the
/// rounding band of the intersections involved.
inline Violations check_chain_ordering(const PreparedChannel& ch, const MufChain& chain) {
  Violations v;
  if (ch.degenerate) return v;
  const std::size_t K = ch.size();
  const std::size_t I = chain.segments();
  detail::expect(v, chain.pi.front() == 0 && chain.pi.back() == K - 1, "chain_endpoints", "pi must run first..last");
  for (std::size_t i = 0; i + 1 < I; ++i) {
    const std::size_t a = chain.pi[i];
    const std::size_t b = chain.pi[i + 1];
    const double z = chain.breakpoints[i + 1];
    const double tz = chain.tolerances[i + 1];
    for (std::size_t l = a + 1; l < K; ++l) {
      const double zl = intersection(ch, a, l);
      detail::expect(v, z <= zl + tz + intersection_tolerance(ch, a, l) + kTieRelativeTolerance * std::abs(zl),
                     "lemma1_min_property", "segment " + std::to_string(i) + ", l=" + std::to_string(l));
    }
    for (std::size_t l = 0; l < b; ++l) {
      if (l == a) continue;
      const double zl = intersection(ch, l, b);
      detail::expect(v, z >= zl - tz - intersection_tolerance(ch, l, b) - kTieRelativeTolerance * std::abs(zl),
                     "lemma1_left_property", "segment " + std::to_string(i) + ", l=" + std::to_string(l));
    }
    if (i + 2 < I) {
      const double next = chain.breakpoints[i + 2];
      detail::expect(v, z <= next + tz + chain.tolerances[i + 2] + kTieRelativeTolerance * std::abs(next),
                     "lemma1_monotone_property", "segment " + std::to_string(i));
    }
  }
  detail::expect(v, chain.s <= chain.w && chain.w < I, "active_range", "s <= w < I");
  return v;
}

/// Samples u*(z) through the chain against max_k u_k(z) at kEnvelopeSamples
/// deterministic points of (-n_1 + delta, 10 n_K].
inline Violations check_envelope(const PreparedChannel& ch, const MufChain& chain) {
  Violations v;
  if (ch.degenerate) return v;
  const double n1 = ch.inverse_gains.front();
  const double lo = -n1 + 1e-6 * n1;
  const double hi = 10.0 * ch.inverse_gains.back();
  double worst = 0.0;
  for (std::size_t j = 0; j < kEnvelopeSamples; ++j) {
    const double frac = std::fmod(static_cast<double>(j + 1) * std::numbers::phi, 1.0);
    const double z = lo + frac * (hi - lo);
    const double via_chain = dominating_muf(chain, ch, z).value;
    const double direct = max_muf(ch, z);
    worst = std::max(worst, std::abs(via_chain - direct) / direct);
  }
  detail::expect(v, worst <= kEnvelopeRelativeTolerance, "dominating_muf_sampling",
                 "worst relative error " + detail::format_value(worst));
  return v;
}

inline Violations check_fading_paper(const CapacityReport& base) {
  Violations v;
  const auto& ch = base.channel;
  for (std::size_t k = 0; k < ch.size(); ++k) {
    const double g = ch.original_gains[k];
    const double pos = positive_log_rate(g);
    const double cap = std::log1p(g);
    detail::expect(v, pos >= cap - std::numbers::ln2 - 1e-12 && pos <= cap + 1e-12, "one_bit_per_state",
                   "state " + std::to_string(k));
  }
  const auto r0 = fading_paper_report(base, 0.0);
  detail::expect(v, r0.c_erg_lower <= r0.achievable_rate + 1e-12 && r0.achievable_rate <= r0.c_erg_upper + 1e-12,
                 "achievable_rate_bracket", detail::format_value(r0.achievable_rate));
  detail::expect(v, r0.gap_upper - r0.gap_lower <= std::numbers::ln2 + 1e-12, "gap_bracket_width",
                 detail::format_value(r0.gap_upper - r0.gap_lower));
  for (const double inr : {1.0, 1e6}) {
    auto r = fading_paper_report(base, inr);
    r.inr = 0.0;
    const bool same = r.achievable_rate == r0.achievable_rate && r.c_erg_lower == r0.c_erg_lower &&
                      r.c_erg_upper == r0.c_erg_upper && r.c_exp_fp == r0.c_exp_fp && r.gap_lower == r0.gap_lower &&
                      r.gap_upper == r0.gap_upper && r.gap_lower_raw == r0.gap_lower_raw;
    detail::expect(v, same, "inr_invariance", "inr=" + detail::format_value(inr));
  }
  return v;
}

/// Every report-level check at once.
inline Violations check_all(const CapacityReport& r) {
  Violations v;
  for (auto&& part : {check_gap_bounds(r), check_routes(r), check_chain_ordering(r.channel, r.chain),
                      check_envelope(r.channel, r.chain), check_fading_paper(r)}) {
    v.insert(v.end(), part.begin(), part.end());
  }
  return v;
}

}  // namespace fadecap
