#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>

#include "fadecap/channel.hpp"
#include "fadecap/errors.hpp"
#include "fadecap/gaps.hpp"

namespace fadecap {

/// Bounds for the fading channel whose fade also scales an interference
/// signal known at the transmitter. All values in nats; none depends on
/// `inr`, which is carried along as given.
struct FadingPaperReport {
  double inr = 0.0;
  double achievable_rate = 0.0;  // E[(ln G)^+]
  double c_erg_lower = 0.0;      // max(C_erg - ln 2, 0)
  double c_erg_upper = 0.0;      // C_erg
  double c_exp_fp = 0.0;         // one-block expected capacity, same as without interference
  double gap_lower_raw = 0.0;    // A - ln 2, may be negative
  double gap_lower = 0.0;        // max(A - ln 2, 0)
  double gap_upper = 0.0;        // A
};

inline double positive_log_rate(double g) { return g > 1.0 ? std::log(g) : 0.0; }

inline FadingPaperReport fading_paper_report(const CapacityReport& base, double inr) {
  if (!std::isfinite(inr) || inr < 0.0) {
    throw ValidationError("inr: must be finite and nonnegative, got " + detail::format_value(inr));
  }
  FadingPaperReport r;
  r.inr = inr;
  const auto& ch = base.channel;
  for (std::size_t k = 0; k < ch.size(); ++k) r.achievable_rate += ch.probs[k] * positive_log_rate(ch.original_gains[k]);
  r.c_erg_upper = base.c_erg;
  r.c_erg_lower = std::max(base.c_erg - std::numbers::ln2, 0.0);
  r.c_exp_fp = base.c_exp;
  r.gap_upper = base.additive_gap;
  r.gap_lower_raw = base.additive_gap - std::numbers::ln2;
  r.gap_lower = std::max(r.gap_lower_raw, 0.0);
  return r;
}

inline FadingPaperReport fading_paper_report(const FadingDistribution& dist, double inr) {
  if (!std::isfinite(inr) || inr < 0.0) {
    throw ValidationError("inr: must be finite and nonnegative, got " + detail::format_value(inr));
  }
  return fading_paper_report(analyze(dist), inr);
}

/// (max(ln(K/2), 0), ln K): bracket on the worst-case additive loss over all
/// K-state distributions and interference levels.
inline std::pair<double, double> worst_case_fp_bracket(std::size_t K) {
  if (K < 1) throw ValidationError("worst_case_fp_bracket: K must be at least 1");
  const double k = static_cast<double>(K);
  return {std::max(std::log(k / 2.0), 0.0), std::log(k)};
}

}  // namespace fadecap
