#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "fadecap/channel.hpp"
#include "fadecap/errors.hpp"

namespace fadecap {

// Marginal utility functions u_k(z) = F_k / (n_k + z) and their upper
// envelope. State and segment indices are 0-based throughout the library.

/// The chain of states that realize the upper envelope of the MUFs.
///
/// Segment i belongs to state `pi[i]` and spans [breakpoints[i],
/// breakpoints[i + 1]). `breakpoints` has one entry more than `pi`:
/// breakpoints[0] = -n_1 and breakpoints.back() = +inf are sentinels, and
/// breakpoints[i] for 0 < i < pi.size() is the intersection of u_{pi[i-1]}
/// and u_{pi[i]}. `tolerances[i]` is the rounding band of breakpoints[i]
/// (0 for the sentinels). Segments s..w are the ones carrying power.
struct MufChain {
  std::vector<std::size_t> pi;
  std::vector<double> breakpoints;
  std::vector<double> tolerances;
  std::size_t s = 0;
  std::size_t w = 0;
  // A breakpoint coincided with 0 (resp. 1) within its band, so the
  // choice of s (resp. w) rests on the boundary convention.
  bool tie_at_zero = false;
  bool tie_at_one = false;

  std::size_t segments() const { return pi.size(); }
};

struct DominatingValue {
  double value;
  std::size_t state;
  std::size_t segment;
};

inline constexpr double kTieRelativeTolerance = 1e-12;
// Multiple of the unit roundoff used to size the band of a computed
// intersection; see intersection_tolerance().
inline constexpr double kRoundingBandUlps = 64.0;

inline double muf_value(const PreparedChannel& ch, std::size_t k, double z) {
  if (k >= ch.size()) throw ValidationError("muf_value: state index out of range");
  const double n = ch.inverse_gains[k];
  if (!(z > -n)) {
    throw ValidationError("muf_value: z = " + detail::format_value(z) +
                          " outside the positivity domain z > -n_k = " + detail::format_value(-n));
  }
  return ch.cum_probs[k] / (n + z);
}

/// z_{k,l} = (F_k n_l - F_l n_k) / (F_l - F_k), the unique crossing of u_k and
/// u_l for k < l.
inline double intersection(const PreparedChannel& ch, std::size_t k, std::size_t l) {
  if (k >= l || l >= ch.size()) {
    throw ValidationError("intersection: requires k < l < K, got k=" + std::to_string(k) +
                          ", l=" + std::to_string(l));
  }
  const double Fk = ch.cum_probs[k];
  const double Fl = ch.cum_probs[l];
  const double nk = ch.inverse_gains[k];
  const double nl = ch.inverse_gains[l];
  // F_l - F_k summed from the probabilities of states k+1..l.
  double dF = 0.0;
  for (std::size_t j = k + 1; j <= l; ++j) dF += ch.probs[j];
  return (Fk * nl - Fl * nk) / dF;
}

/// Absolute rounding band of intersection(ch, k, l). The numerator is a
/// difference of two products, so its error scales with their magnitude
/// F_k n_l + F_l n_k rather than with the (possibly vanishing) result.
inline double intersection_tolerance(const PreparedChannel& ch, std::size_t k, std::size_t l) {
  const double Fk = ch.cum_probs[k];
  const double Fl = ch.cum_probs[l];
  double dF = 0.0;
  for (std::size_t j = k + 1; j <= l; ++j) dF += ch.probs[j];
  const double scale = (Fk * ch.inverse_gains[l] + Fl * ch.inverse_gains[k]) / dF;
  return kRoundingBandUlps * std::numeric_limits<double>::epsilon() * scale;
}

namespace detail {

// A fixed absolute floor would merge genuinely distinct intersections on
// channels with very large gains; the rounding bands scale with the channel.
inline bool intersections_tie(double a, double tol_a, double b, double tol_b) {
  const double diff = std::abs(a - b);
  if (diff <= kTieRelativeTolerance * std::max(std::abs(a), std::abs(b))) return true;
  return diff <= tol_a + tol_b;
}

}  // namespace detail

/// Builds the dominating chain: pi_1 = first state, and pi_{i+1} is the
/// largest minimizer of z_{pi_i, l} over l > pi_i. Then picks s as the last
/// segment starting at or below 0 and w as the last starting below 1.
inline MufChain build_chain(const PreparedChannel& ch) {
  if (ch.degenerate) {
    throw ValidationError("build_chain: channel has a zero gain and no positive substitute");
  }
  const std::size_t K = ch.size();
  MufChain chain;
  chain.pi.push_back(0);
  chain.breakpoints.push_back(-ch.inverse_gains[0]);
  chain.tolerances.push_back(0.0);

  std::size_t current = 0;
  while (current + 1 < K) {
    std::size_t best = current + 1;
    double best_z = intersection(ch, current, best);
    double best_tol = intersection_tolerance(ch, current, best);
    for (std::size_t l = current + 2; l < K; ++l) {
      const double z = intersection(ch, current, l);
      const double tol = intersection_tolerance(ch, current, l);
      if (detail::intersections_tie(z, tol, best_z, best_tol)) {
        best = l;
        if (z < best_z) {
          best_z = z;
          best_tol = tol;
        }
      } else if (z < best_z) {
        best = l;
        best_z = z;
        best_tol = tol;
      }
    }
    chain.pi.push_back(best);
    chain.breakpoints.push_back(intersection(ch, current, best));
    chain.tolerances.push_back(intersection_tolerance(ch, current, best));
    current = best;
  }
  chain.breakpoints.push_back(std::numeric_limits<double>::infinity());
  chain.tolerances.push_back(0.0);

  const std::size_t I = chain.segments();
  for (std::size_t i = 0; i < I; ++i) {
    const double z = chain.breakpoints[i];
    const double tol = chain.tolerances[i];
    if (z <= tol) chain.s = i;
    if (z < 1.0 - tol) chain.w = i;
    if (i > 0) {
      if (std::abs(z) <= tol) chain.tie_at_zero = true;
      if (std::abs(z - 1.0) <= tol) chain.tie_at_one = true;
    }
  }
  // Breakpoints are non-decreasing, so w >= s; a rounding-level inversion
  // cannot be allowed to produce an empty active range.
  chain.w = std::max(chain.w, chain.s);
  return chain;
}

/// u*(z) through the chain. A point on an interior breakpoint is reported
/// against the higher segment; both adjacent MUFs agree there.
inline DominatingValue dominating_muf(const MufChain& chain, const PreparedChannel& ch, double z) {
  if (!(z > chain.breakpoints.front())) {
    throw ValidationError("dominating_muf: z = " + detail::format_value(z) +
                          " must exceed -n_1 = " + detail::format_value(chain.breakpoints.front()));
  }
  std::size_t seg = 0;
  for (std::size_t i = 1; i < chain.segments(); ++i) {
    if (chain.breakpoints[i] <= z) seg = i;
  }
  const std::size_t state = chain.pi[seg];
  return {muf_value(ch, state, z), state, seg};
}

/// Brute-force max_k u_k(z), independent of the chain.
inline double max_muf(const PreparedChannel& ch, double z) {
  double best = 0.0;
  for (std::size_t k = 0; k < ch.size(); ++k) {
    if (z > -ch.inverse_gains[k]) best = std::max(best, muf_value(ch, k, z));
  }
  return best;
}

}  // namespace fadecap
