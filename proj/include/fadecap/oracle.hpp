#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "fadecap/allocation.hpp"
#include "fadecap/channel.hpp"
#include "fadecap/errors.hpp"

namespace fadecap {

// Direct maximization of the power allocation program. Only
// expected_rate_of() is used; nothing here depends on the MUF chain.

struct OracleResult {
  double value = 0.0;
  std::vector<double> beta;
  std::size_t iterations = 0;
  double resolution = 0.0;
};

struct ScalarMaximum {
  double x;
  double value;
};

/// Golden-section search for the maximum of a unimodal f on [a, b], stopped
/// once the bracket is narrower than tol. Both endpoints are also compared,
/// so maxima sitting on the boundary are returned exactly.
inline ScalarMaximum golden_section_maximize(const std::function<double(double)>& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = a;
  double hi = b;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  ScalarMaximum best{f1 >= f2 ? x1 : x2, std::max(f1, f2)};
  for (const double x : {a, b}) {
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

namespace detail {

inline bool better_candidate(double value, const std::vector<double>& beta, double best_value,
                             const std::vector<double>& best_beta) {
  if (value != best_value) return value > best_value;
  return std::lexicographical_compare(beta.begin(), beta.end(), best_beta.begin(), best_beta.end());
}

inline constexpr std::size_t kGridIntervals = 16;
inline constexpr double kGridKeepCells = 3.0;

/// Nested grid over beta_1..beta_{K-1} (beta_K = 1). Each axis takes a
/// uniform grid on the current box plus the value of the previous axis, so
/// allocations with tied layers are reachable exactly.
inline OracleResult grid_search(const PreparedChannel& ch, double tol) {
  const std::size_t K = ch.size();
  const std::size_t D = K - 1;
  std::vector<double> center(D, 0.5);
  double half = 0.5;

  OracleResult best;
  best.beta.assign(K, 1.0);
  best.value = expected_rate_of(ch, best.beta);

  std::vector<double> beta(K, 1.0);
  std::vector<std::vector<double>> axes(D);
  for (;;) {
    ++best.iterations;
    double cell = 0.0;
    for (std::size_t j = 0; j < D; ++j) {
      const double lo = std::max(0.0, center[j] - half);
      const double hi = std::min(1.0, center[j] + half);
      cell = std::max(cell, (hi - lo) / static_cast<double>(kGridIntervals));
      axes[j].clear();
      for (std::size_t t = 0; t <= kGridIntervals; ++t) {
        axes[j].push_back(t == kGridIntervals ? hi : lo + (hi - lo) * static_cast<double>(t) / kGridIntervals);
      }
    }

    const std::function<void(std::size_t, double)> descend = [&](std::size_t j, double prev) {
      if (j == D) {
        const double v = expected_rate_of(ch, beta);
        if (better_candidate(v, beta, best.value, best.beta)) {
          best.value = v;
          best.beta = beta;
        }
        return;
      }
      bool tied_seen = false;
      for (const double x : axes[j]) {
        if (x < prev) continue;
        if (x == prev) tied_seen = true;
        beta[j] = x;
        descend(j + 1, x);
      }
      if (!tied_seen && j > 0 && prev >= axes[j].front() && prev <= axes[j].back()) {
        beta[j] = prev;
        descend(j + 1, prev);
      }
    };
    descend(0, 0.0);

    best.resolution = cell;
    if (cell <= tol) break;
    std::copy(best.beta.begin(), best.beta.begin() + static_cast<std::ptrdiff_t>(D), center.begin());
    half = kGridKeepCells * cell;
  }
  return best;
}

inline constexpr std::size_t kMaxAscentSweeps = 1000;

/// Cyclic ascent over every contiguous block beta_i..beta_j (single
/// coordinates included) moved as one value. Each such slice is unimodal.
inline OracleResult coordinate_ascent(const PreparedChannel& ch, std::vector<double> beta, double tol) {
  const std::size_t K = ch.size();
  const std::size_t D = K - 1;
  OracleResult res;
  double value = expected_rate_of(ch, beta);
  std::vector<double> trial;
  for (std::size_t sweep = 0; sweep < kMaxAscentSweeps; ++sweep) {
    ++res.iterations;
    const double start = value;
    for (std::size_t i = 0; i < D; ++i) {
      for (std::size_t j = i; j < D; ++j) {
        const double lo = i == 0 ? 0.0 : beta[i - 1];
        const double hi = beta[j + 1];
        if (hi <= lo) continue;
        trial = beta;
        const auto slice = [&](double t) {
          std::fill(trial.begin() + static_cast<std::ptrdiff_t>(i), trial.begin() + static_cast<std::ptrdiff_t>(j + 1), t);
          return expected_rate_of(ch, trial);
        };
        const auto m = golden_section_maximize(slice, lo, hi, tol);
        if (m.value > value) {
          std::fill(beta.begin() + static_cast<std::ptrdiff_t>(i), beta.begin() + static_cast<std::ptrdiff_t>(j + 1), m.x);
          value = m.value;
        }
      }
    }
    if (value - start <= 1e-15 * std::abs(value)) break;
  }
  res.beta = std::move(beta);
  res.value = value;
  res.resolution = tol;
  return res;
}

inline std::vector<std::vector<double>> ascent_seeds(std::size_t K) {
  std::vector<std::vector<double>> seeds;
  const auto make = [&](const std::function<double(double)>& shape) {
    std::vector<double> b(K);
    for (std::size_t k = 0; k < K; ++k) b[k] = k + 1 == K ? 1.0 : shape(static_cast<double>(k + 1) / K);
    seeds.push_back(std::move(b));
  };
  make([](double) { return 0.0; });
  make([](double) { return 1.0; });
  make([](double) { return 0.5; });
  make([](double x) { return x; });
  make([](double x) { return x * x; });
  make([](double x) { return std::sqrt(x); });
  make([](double x) { return x <= 0.5 ? 0.0 : 1.0; });
  make([](double x) { return x <= 0.5 ? 0.25 : 0.75; });
  return seeds;
}

}  // namespace detail

inline constexpr std::size_t kGridSearchMaxStates = 4;

/// Maximizes the allocation objective without the closed form: nested grid
/// refinement up to 4 states, multi-start block coordinate ascent beyond.
inline OracleResult brute_force_expected_capacity(const PreparedChannel& ch, double tol) {
  if (!(tol > 0.0)) throw ValidationError("brute_force_expected_capacity: tol must be positive");
  const std::size_t K = ch.size();
  if (K == 1 || ch.degenerate) {
    OracleResult r;
    r.beta.assign(K, 1.0);
    r.value = expected_rate_of(ch, r.beta);
    return r;
  }
  OracleResult best;
  if (K <= kGridSearchMaxStates) {
    best = detail::grid_search(ch, tol);
  } else {
    bool first = true;
    std::size_t iterations = 0;
    for (auto& seed : detail::ascent_seeds(K)) {
      auto r = detail::coordinate_ascent(ch, std::move(seed), tol);
      iterations += r.iterations;
      if (first || detail::better_candidate(r.value, r.beta, best.value, best.beta)) best = std::move(r);
      first = false;
    }
    best.iterations = iterations;
  }
  best.value = expected_rate_of(ch, best.beta);
  return best;
}

}  // namespace fadecap
