#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

#include "fadecap/channel.hpp"

namespace fadecap::cli {

/// Seeded source of random test channels: K uniform on [min_states,
/// max_states], gains log-uniform on [gain_lo, gain_hi], probabilities
/// Dirichlet(1). Uses mt19937_64 and hand-rolled variates so the stream
/// is identical across standard library implementations.
class InstanceGenerator {
public:
  explicit InstanceGenerator(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on (0, 1).
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  std::size_t uniform_index(std::size_t lo, std::size_t hi) {
    const auto span = static_cast<double>(hi - lo + 1);
    const auto k = lo + static_cast<std::size_t>(uniform() * span);
    return k > hi ? hi : k;
  }

  FadingDistribution channel(std::size_t min_states, std::size_t max_states, double gain_lo = 1e-3,
                             double gain_hi = 1e3) {
    const std::size_t K = uniform_index(min_states, max_states);
    FadingDistribution dist;
    dist.gains.resize(K);
    dist.probs.resize(K);
    const double a = std::log(gain_lo);
    const double b = std::log(gain_hi);
    double total = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      dist.gains[k] = std::exp(a + (b - a) * uniform());
      dist.probs[k] = -std::log(uniform());
      total += dist.probs[k];
    }
    for (auto& p : dist.probs) p /= total;
    return dist;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace fadecap::cli
