#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fadecap/channel.hpp"
#include "fadecap/errors.hpp"
#include "fadecap/gaps.hpp"

namespace fadecap {

// Extremal distributions for the additive and multiplicative gaps, and the
// two asymptotic SNR regimes.

enum class FamilyKind { additive, multiplicative, high_snr, low_snr };

inline std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::additive:
      return "additive";
    case FamilyKind::multiplicative:
      return "multiplicative";
    case FamilyKind::high_snr:
      return "high_snr";
    case FamilyKind::low_snr:
      return "low_snr";
  }
  return "unknown";
}

inline std::optional<FamilyKind> parse_family_kind(std::string_view name) {
  for (const auto kind : {FamilyKind::additive, FamilyKind::multiplicative, FamilyKind::high_snr, FamilyKind::low_snr}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

/// g_k = d + d^2 + ... + d^{K-k+1} with uniform probabilities; needs
/// d > max(K - 1, 2).
inline FadingDistribution additive_family(std::size_t K, double d) {
  if (K < 1) throw ValidationError("additive_family: K must be at least 1");
  const double lower = std::max(static_cast<double>(K) - 1.0, 2.0);
  if (!std::isfinite(d) || !(d > lower)) {
    throw ValidationError("additive_family: d = " + detail::format_value(d) + " must exceed max(K-1, 2) = " +
                          detail::format_value(lower));
  }
  FadingDistribution dist;
  dist.gains.resize(K);
  dist.probs.assign(K, 1.0 / static_cast<double>(K));
  for (std::size_t k = 0; k < K; ++k) {
    const double terms = static_cast<double>(K - k);
    dist.gains[k] = d * (std::pow(d, terms) - 1.0) / (d - 1.0);
  }
  return dist;
}

/// n_k = d + ... + d^k and p_k proportional to d^k; needs d > 0. Every pair
/// of MUFs of this family crosses at z = 0.
inline FadingDistribution multiplicative_family(std::size_t K, double d) {
  if (K < 1) throw ValidationError("multiplicative_family: K must be at least 1");
  if (!std::isfinite(d) || !(d > 0.0)) {
    throw ValidationError("multiplicative_family: d = " + detail::format_value(d) + " must be positive");
  }
  std::vector<double> powers(K);
  std::vector<double> partial(K);
  double running = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    powers[k] = std::pow(d, static_cast<double>(k + 1));
    running += powers[k];
    partial[k] = running;
  }
  FadingDistribution dist;
  dist.gains.resize(K);
  dist.probs.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    dist.gains[k] = 1.0 / partial[k];
    dist.probs[k] = powers[k] / running;
  }
  return dist;
}

namespace detail {

inline void require_strictly_decreasing_positive(std::span<const double> v, const char* what) {
  if (v.empty()) throw ValidationError(std::string(what) + ": must not be empty");
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k]) || !(v[k] > 0.0)) {
      throw ValidationError(std::string(what) + "[" + std::to_string(k) + "]: must be finite and positive");
    }
    if (k > 0 && !(v[k] < v[k - 1])) {
      throw ValidationError(std::string(what) + ": must be strictly decreasing (index " + std::to_string(k) + ")");
    }
  }
}

inline void require_snr_inputs(std::span<const double> coeffs, std::span<const double> probs, double snr,
                               const char* what) {
  require_strictly_decreasing_positive(coeffs, what);
  if (coeffs.size() != probs.size()) throw ValidationError(std::string(what) + "/probs: length mismatch");
  if (!std::isfinite(snr) || !(snr > 0.0)) throw ValidationError("snr: must be finite and positive");
}

}  // namespace detail

/// g_k = SNR^{r_k} for strictly decreasing positive exponents r.
inline FadingDistribution high_snr_instance(std::span<const double> r, std::span<const double> p, double snr) {
  detail::require_snr_inputs(r, p, snr, "exponents");
  FadingDistribution dist;
  dist.probs.assign(p.begin(), p.end());
  for (const double rk : r) dist.gains.push_back(std::pow(snr, rk));
  return dist;
}

/// g_k = alpha_k SNR for strictly decreasing positive slopes alpha.
inline FadingDistribution low_snr_instance(std::span<const double> alpha, std::span<const double> p, double snr) {
  detail::require_snr_inputs(alpha, p, snr, "slopes");
  FadingDistribution dist;
  dist.probs.assign(p.begin(), p.end());
  for (const double a : alpha) dist.gains.push_back(a * snr);
  return dist;
}

inline FadingDistribution family_instance(FamilyKind kind, std::size_t K, double d) {
  switch (kind) {
    case FamilyKind::additive:
      return additive_family(K, d);
    case FamilyKind::multiplicative:
      return multiplicative_family(K, d);
    default:
      throw ValidationError("kind " + std::string(to_string(kind)) +
                            " is parameterized by exponents/slopes and an SNR, not by d");
  }
}

struct SweepRow {
  double d;
  CapacityReport report;
};

/// One analyze() per parameter value, in the given order. Every value is
/// validated before any is evaluated.
inline std::vector<SweepRow> sweep(FamilyKind kind, std::size_t K, std::span<const double> d_values) {
  std::vector<FadingDistribution> dists;
  dists.reserve(d_values.size());
  for (const double d : d_values) {
    try {
      dists.push_back(family_instance(kind, K, d));
    } catch (const ValidationError& e) {
      throw ValidationError("sweep: invalid d = " + detail::format_value(d) + ": " + e.what());
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(dists.size());
  for (std::size_t i = 0; i < dists.size(); ++i) rows.push_back({d_values[i], analyze(dists[i])});
  return rows;
}

/// Shortest decimal that round-trips, '.' separator, independent of locale.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline constexpr std::string_view kSweepCsvHeader = "d,c_erg,c_exp,additive_gap,multiplicative_gap,entropy";

/// CSV with header kSweepCsvHeader. `unit_scale` divides the nat-valued
/// columns (1 for nats, ln 2 for bits).
inline std::string sweep_csv(std::span<const SweepRow> rows, double unit_scale = 1.0) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& row : rows) {
    const auto& r = row.report;
    out += format_double(row.d) + ',' + format_double(r.c_erg / unit_scale) + ',' +
           format_double(r.c_exp / unit_scale) + ',' + format_double(r.additive_gap / unit_scale) + ',' +
           format_double(r.multiplicative_gap) + ',' + format_double(r.entropy / unit_scale) + '\n';
  }
  return out;
}

}  // namespace fadecap
