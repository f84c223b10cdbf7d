#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fadecap/fading_paper.hpp"
#include "fadecap/gaps.hpp"
#include "fadecap/worst_case.hpp"

namespace fadecap::cli {

using Json = nlohmann::ordered_json;

enum class Units { nats, bits };

inline double unit_scale(Units u) { return u == Units::bits ? std::numbers::ln2 : 1.0; }
inline std::string_view unit_name(Units u) { return u == Units::bits ? "bits" : "nats"; }

namespace detail {

// Non-finite values have no JSON literal; they are written as null.
inline Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline Json numbers(const std::vector<double>& v, double scale = 1.0) {
  Json a = Json::array();
  for (const double x : v) a.push_back(number(x / scale));
  return a;
}

// State indices are reported 1-based.
inline Json states(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (const auto x : v) a.push_back(x + 1);
  return a;
}

}  // namespace detail

inline Json distribution_json(const FadingDistribution& dist) {
  Json j;
  j["gains"] = detail::numbers(dist.gains);
  j["probs"] = detail::numbers(dist.probs);
  return j;
}

inline Json capacity_json(const CapacityReport& r, Units units) {
  const double s = unit_scale(units);
  Json j;
  j["units"] = unit_name(units);
  j["c_erg"] = r.c_erg / s;
  j["c_exp"] = r.c_exp / s;
  j["additive_gap"] = r.additive_gap / s;
  j["multiplicative_gap"] = r.multiplicative_gap;
  j["entropy"] = r.entropy / s;
  j["lemma2_terms"] = detail::numbers(r.lemma2_terms);
  j["lemma3_terms"] = detail::numbers(r.lemma3_terms);
  j["active_states"] = detail::states(r.active_states);
  j["lemma_terms_regularized"] = r.lemma_terms_regularized;

  Json ch;
  ch["gains"] = detail::numbers(r.channel.original_gains);
  ch["probs"] = detail::numbers(r.channel.probs);
  ch["epsilon_applied"] = r.channel.epsilon_applied ? Json(*r.channel.epsilon_applied) : Json(nullptr);
  ch["degenerate"] = r.channel.degenerate;
  j["channel"] = ch;

  Json chain;
  chain["pi"] = detail::states(r.chain.pi);
  chain["breakpoints"] = detail::numbers(r.chain.breakpoints);
  chain["s"] = r.chain.s + 1;
  chain["w"] = r.chain.w + 1;
  chain["tie_at_zero"] = r.chain.tie_at_zero;
  chain["tie_at_one"] = r.chain.tie_at_one;
  j["chain"] = chain;

  Json alloc;
  alloc["beta"] = detail::numbers(r.allocation.beta);
  alloc["lambda"] = detail::numbers(r.allocation.lambda);
  alloc["per_state_rate"] = detail::numbers(r.allocation.per_state_rate, s);
  j["allocation"] = alloc;
  return j;
}

inline Json fading_paper_json(const FadingPaperReport& r, Units units) {
  const double s = unit_scale(units);
  Json j;
  j["units"] = unit_name(units);
  j["inr"] = r.inr;
  j["achievable_rate"] = r.achievable_rate / s;
  j["c_erg_lower"] = r.c_erg_lower / s;
  j["c_erg_upper"] = r.c_erg_upper / s;
  j["c_exp_fp"] = r.c_exp_fp / s;
  j["gap_lower"] = r.gap_lower / s;
  j["gap_lower_raw"] = r.gap_lower_raw / s;
  j["gap_upper"] = r.gap_upper / s;
  return j;
}

inline Json sweep_json(const std::vector<SweepRow>& rows, Units units) {
  const double s = unit_scale(units);
  Json j;
  j["units"] = unit_name(units);
  Json a = Json::array();
  for (const auto& row : rows) {
    Json e;
    e["d"] = row.d;
    e["c_erg"] = row.report.c_erg / s;
    e["c_exp"] = row.report.c_exp / s;
    e["additive_gap"] = row.report.additive_gap / s;
    e["multiplicative_gap"] = row.report.multiplicative_gap;
    e["entropy"] = row.report.entropy / s;
    a.push_back(e);
  }
  j["rows"] = a;
  return j;
}

}  // namespace fadecap::cli
