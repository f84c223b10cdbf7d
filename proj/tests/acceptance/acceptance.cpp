// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "fadecap/cli/random_instances.hpp"
#include "fadecap/fadecap.hpp"

using namespace fadecap;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  if (!ok) ++failures;
}

bool has(const Violations& v, const std::string& check) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.check == check; });
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

int main() {
  constexpr std::size_t kTrials = 200;
  constexpr double kOracleTol = 1e-7;

  // Criterion 1 builds the random instances; 2-5 reuse them together with
  // both worst-case families.
  std::vector<CapacityReport> random_reports;
  {
    cli::InstanceGenerator gen(0);
    double worst = 0.0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t t = 0; t < kTrials; ++t) {
      const auto r = analyze(gen.channel(2, 5));
      const auto oracle = brute_force_expected_capacity(r.channel, kOracleTol);
      worst = std::max(worst, std::abs(oracle.value - r.c_exp));
      random_reports.push_back(r);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(1, worst <= 1e-6 && seconds < 60.0, "oracle certification on 200 random channels",
           "max |closed form - oracle| = " + fmt(worst) + ", " + fmt(seconds) + " s");
  }

  std::vector<CapacityReport> all = random_reports;
  for (std::size_t K = 1; K <= 8; ++K) {
    for (const double d : {3.0, 10.0, 100.0, 1e4}) {
      if (d > std::max(static_cast<double>(K) - 1.0, 2.0)) all.push_back(analyze(additive_family(K, d)));
    }
    for (const double d : {0.5, 2.0, 60.0, 1e4}) all.push_back(analyze(multiplicative_family(K, d)));
  }

  {
    double worst = 0.0;
    for (const auto& r : all) {
      const double scale = std::max(std::abs(r.routes.per_state), std::abs(r.routes.grouped));
      if (scale > 0.0) worst = std::max(worst, std::abs(r.routes.per_state - r.routes.grouped) / scale);
    }
    report(2, worst <= 1e-12, "closed-form routes agree", "max relative difference " + fmt(worst) + " over " +
                                                              std::to_string(all.size()) + " instances");
  }
  {
    double worst_a = -INFINITY, worst_m = -INFINITY;
    for (const auto& r : all) {
      const double K = static_cast<double>(r.channel.size());
      worst_a = std::max(worst_a, r.additive_gap - std::log(K));
      worst_m = std::max(worst_m, r.multiplicative_gap - K);
    }
    report(3, worst_a <= 1e-9 && worst_m <= 1e-9, "converse bounds A <= ln K, M <= K",
           "max A - ln K = " + fmt(worst_a) + ", max M - K = " + fmt(worst_m));
  }
  {
    std::size_t bad = 0;
    for (const auto& r : all) {
      const auto v = check_gap_bounds(r);
      bad += has(v, "lemma2_term") || has(v, "lemma3_term");
    }
    report(4, bad == 0, "per-state lemma inequalities", std::to_string(bad) + " instances violate");
  }
  {
    std::size_t bad = 0;
    std::string first;
    for (const auto& r : all) {
      auto v = check_chain_ordering(r.channel, r.chain);
      const auto e = check_envelope(r.channel, r.chain);
      v.insert(v.end(), e.begin(), e.end());
      if (!v.empty()) {
        if (bad == 0) first = ", first: " + v.front().check + " " + v.front().detail;
        ++bad;
      }
    }
    report(5, bad == 0, "chain ordering properties and envelope sampling", std::to_string(bad) + " instances violate" + first);
  }
  {
    const std::vector<double> ds{10.0, 100.0, 1000.0, 10000.0};
    const auto rows = sweep(FamilyKind::additive, 8, ds);
    bool increasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      increasing = increasing && rows[i].report.additive_gap > rows[i - 1].report.additive_gap;
    }
    const double shortfall = std::log(8.0) - rows.back().report.additive_gap;
    const auto r300 = analyze(additive_family(8, 300.0));
    const auto [lo, hi] = std::minmax_element(r300.lemma2_terms.begin(), r300.lemma2_terms.end());
    report(6, increasing && shortfall <= 0.02 && *lo >= 7.8 && *hi <= 8.0, "additive family convergence, K=8",
           std::string(increasing ? "A increasing" : "A not increasing") + ", ln 8 - A(1e4) = " + fmt(shortfall) +
               ", lemma2 terms at d=300 in [" + fmt(*lo) + ", " + fmt(*hi) + "]");
  }
  {
    const auto r = analyze(multiplicative_family(8, 60.0));
    const auto [lo, hi] = std::minmax_element(r.lemma3_terms.begin(), r.lemma3_terms.end());
    double worst_z = 0.0;
    for (std::size_t k = 0; k < r.channel.size(); ++k) {
      for (std::size_t l = k + 1; l < r.channel.size(); ++l) {
        worst_z = std::max(worst_z, std::abs(intersection(r.channel, k, l)));
      }
    }
    const bool m_ok = r.multiplicative_gap >= 7.85 && r.multiplicative_gap <= 8.0;
    const bool terms_ok = *lo >= 0.983 && *hi <= 1.0;
    report(7, m_ok && terms_ok && worst_z <= 1e-12, "multiplicative family convergence, K=8, d=60",
           "M = " + fmt(r.multiplicative_gap) + ", lemma3 terms in [" + fmt(*lo) + ", " + fmt(*hi) +
               "], max |z_kl| = " + fmt(worst_z));
  }
  {
    const std::vector<double> rr{1.0, 0.75, 0.5, 0.25};
    const std::vector<double> p(4, 0.25);
    const auto r = analyze(high_snr_instance(rr, p, 1e12));
    const bool all_active = r.chain.pi == std::vector<std::size_t>{0, 1, 2, 3} && r.chain.s == 0 && r.chain.w == 3;
    const double dev = std::abs(r.additive_gap - std::log(4.0));
    report(8, all_active && dev <= 0.01 && std::abs(r.entropy - std::log(4.0)) <= 1e-12, "high-SNR regime",
           std::string(all_active ? "all 4 states active" : "not all states active") + ", |A - ln 4| = " + fmt(dev));
  }
  {
    const std::vector<double> alpha{5.0, 3.0, 1.0};
    const std::vector<double> p{0.2, 0.3, 0.5};
    const auto r = analyze(low_snr_instance(alpha, p, 1e-6));
    std::size_t argmax = 0;
    for (std::size_t k = 1; k < 3; ++k) {
      if (r.channel.cum_probs[k] * alpha[k] > r.channel.cum_probs[argmax] * alpha[argmax]) argmax = k;
    }
    const bool single = r.active_states == std::vector<std::size_t>{argmax} && argmax == 1;
    const double dev = std::abs(r.multiplicative_gap - 1.6);
    report(9, single && dev <= 0.01, "low-SNR regime",
           std::to_string(r.active_states.size()) + " active state(s), first index " +
               std::to_string(r.active_states.front() + 1) + ", |M - 1.6| = " + fmt(dev));
  }
  {
    std::size_t bad = 0;
    for (const auto& r : random_reports) bad += !check_fading_paper(r).empty();
    report(10, bad == 0, "fading-paper bracket on random channels", std::to_string(bad) + " instances violate");
  }
  {
    const auto r = analyze(FadingDistribution{{1.0, 0.0}, {0.5, 0.5}});
    const double half_ln2 = 0.5 * std::numbers::ln2;
    const auto modified = analyze(FadingDistribution{{1.0, r.channel.gains[1]}, {0.5, 0.5}});
    const bool ok = std::abs(r.c_exp - half_ln2) <= 1e-12 && std::abs(r.c_erg - half_ln2) <= 1e-12 &&
                    r.additive_gap == 0.0 && r.multiplicative_gap == 1.0 &&
                    std::abs(modified.c_exp - r.c_exp) <= 1e-12;
    report(11, ok, "zero-gain handling",
           "C_exp = " + fmt(r.c_exp) + ", C_erg = " + fmt(r.c_erg) + ", eps-modified C_exp = " + fmt(modified.c_exp));
  }

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
