#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "fadecap/allocation.hpp"
#include "fadecap/errors.hpp"
#include "fadecap/worst_case.hpp"
#include "support/reference.hpp"

using namespace fadecap;

namespace {

struct Solved {
  PreparedChannel ch;
  MufChain chain;
  PowerAllocation alloc;
  double c_exp;
};

Solved solve(const FadingDistribution& d) {
  Solved s;
  s.ch = prepare(d);
  s.chain = build_chain(s.ch);
  s.alloc = optimal_allocation(s.ch, s.chain);
  s.c_exp = expected_capacity(s.ch, s.chain, s.alloc);
  return s;
}

}  // namespace

TEST(OptimalAllocation, TwoStateExample) {
  const auto s = solve({{4.0, 1.0}, {0.5, 0.5}});
  EXPECT_DOUBLE_EQ(s.alloc.beta[0], 0.5);
  EXPECT_EQ(s.alloc.beta[1], 1.0);
  EXPECT_NEAR(s.alloc.lambda[0], 4.0, 1e-14);
  EXPECT_NEAR(s.alloc.lambda[1], 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(s.alloc.log_lambda[0], std::log(4.0), 1e-14);
}

TEST(OptimalAllocation, RegularizedZeroGainExample) {
  const auto s = solve({{1.0, 1.0 / 6.0}, {0.5, 0.5}});
  EXPECT_EQ(s.alloc.beta, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(s.chain.s, 0u);
  EXPECT_EQ(s.chain.w, 0u);
}

TEST(OptimalAllocation, SingleState) {
  const auto s = solve({{2.0}, {1.0}});
  EXPECT_EQ(s.alloc.beta, (std::vector<double>{1.0}));
  EXPECT_NEAR(s.alloc.lambda[0], 3.0, 1e-15);
}

TEST(OptimalAllocation, BetaIsFeasibleAndMatchesBreakpoints) {
  const auto s = solve({{9.0, 3.0, 0.5}, {0.2, 0.3, 0.5}});
  EXPECT_NEAR(s.alloc.beta[0], 1.0 / 27.0, 1e-12);
  EXPECT_EQ(s.alloc.beta[1], 1.0);
  EXPECT_EQ(s.alloc.beta[2], 1.0);
  for (std::size_t k = 1; k < s.alloc.beta.size(); ++k) EXPECT_LE(s.alloc.beta[k - 1], s.alloc.beta[k]);
}

TEST(OptimalAllocation, PerStateRatesSumToCapacity) {
  const auto s = solve(additive_family(3, 10.0));
  double sum = 0.0;
  for (std::size_t k = 0; k < s.ch.size(); ++k) sum += s.ch.probs[k] * s.alloc.log_lambda[k];
  EXPECT_NEAR(sum, s.c_exp, 1e-12 * s.c_exp);
  // Rate decoded in state k is the cumulative layer rate.
  double decoded = 0.0;
  for (std::size_t k = 0; k < s.ch.size(); ++k) decoded += s.ch.cum_probs[k] * s.alloc.per_state_rate[k];
  EXPECT_NEAR(decoded, s.c_exp, 1e-12 * s.c_exp);
}

TEST(ExpectedCapacity, Examples) {
  EXPECT_NEAR(solve({{4.0, 1.0}, {0.5, 0.5}}).c_exp, 0.836988216785835773, 1e-15);
  EXPECT_NEAR(solve(multiplicative_family(2, 2.0)).c_exp, std::log(7.0 / 6.0), 1e-15);
  EXPECT_NEAR(solve({{2.0}, {1.0}}).c_exp, std::log(3.0), 1e-15);
}

TEST(ExpectedCapacity, FrozenValues) {
  EXPECT_NEAR(solve({{9.0, 3.0, 0.5}, {0.2, 0.3, 0.5}}).c_exp, 0.6980033372213884, 1e-14);
  EXPECT_NEAR(solve(additive_family(3, 10.0)).c_exp, 3.7349815405433517, 1e-13);
  EXPECT_NEAR(solve({{5e-6, 3e-6, 1e-6}, {0.2, 0.3, 0.5}}).c_exp, 1.4999977500045e-06, 1e-18);
}

TEST(ExpectedCapacity, RoutesAgree) {
  for (const auto& d : {FadingDistribution{{4.0, 1.0}, {0.5, 0.5}}, additive_family(5, 100.0),
                        multiplicative_family(8, 60.0), FadingDistribution{{9.0, 3.0, 0.5}, {0.2, 0.3, 0.5}}}) {
    const auto s = solve(d);
    const auto r = expected_capacity_routes(s.ch, s.chain, s.alloc);
    EXPECT_TRUE(routes_agree(r)) << r.per_state << " vs " << r.grouped;
  }
}

TEST(ExpectedCapacity, MatchesIndependentGridSearch) {
  for (const auto& d : {FadingDistribution{{4.0, 1.0}, {0.5, 0.5}}, FadingDistribution{{9.0, 3.0, 0.5}, {0.2, 0.3, 0.5}},
                        FadingDistribution{{100.0, 2.0, 0.01}, {0.6, 0.1, 0.3}}}) {
    const auto s = solve(d);
    const double ref = reference::dense_grid_capacity(reference::raw_channel(d.gains, d.probs));
    EXPECT_NEAR(s.c_exp, ref, 1e-9);
    EXPECT_LE(ref, s.c_exp + 1e-12);
  }
}

TEST(ExpectedCapacity, EqualsIntegralOfEnvelope) {
  for (const auto& d : {FadingDistribution{{9.0, 3.0, 0.5}, {0.2, 0.3, 0.5}}, additive_family(4, 10.0),
                        FadingDistribution{{0.3, 0.2, 0.05}, {0.5, 0.25, 0.25}}}) {
    const auto s = solve(d);
    const auto raw = reference::raw_channel(d.gains, d.probs);
    const double ref = reference::adaptive_simpson([&](double z) { return reference::raw_envelope(raw, z); }, 0.0, 1.0, 1e-13);
    EXPECT_NEAR(s.c_exp, ref, 1e-10);
    EXPECT_NEAR(dominating_muf_integral(s.ch, s.chain), s.c_exp, 1e-12);
  }
}

TEST(ExpectedRateOf, Examples) {
  const auto ch = prepare({{4.0, 1.0}, {0.5, 0.5}});
  EXPECT_NEAR(expected_rate_of(ch, std::vector<double>{0.5, 1.0}), 0.836988216785835773, 1e-15);
  EXPECT_NEAR(expected_rate_of(ch, std::vector<double>{0.0, 1.0}), std::numbers::ln2, 1e-15);
  const auto three = prepare({{9.0, 3.0, 0.5}, {0.2, 0.3, 0.5}});
  EXPECT_NEAR(expected_rate_of(three, std::vector<double>{0.0, 0.0, 1.0}), std::log1p(0.5), 1e-15);
}

TEST(ExpectedRateOf, ValidatesBeta) {
  const auto ch = prepare({{4.0, 1.0}, {0.5, 0.5}});
  EXPECT_THROW((void)expected_rate_of(ch, std::vector<double>{0.5}), ValidationError);
  EXPECT_THROW((void)expected_rate_of(ch, std::vector<double>{0.6, 0.5}), ValidationError);
  EXPECT_THROW((void)expected_rate_of(ch, std::vector<double>{-0.1, 0.5}), ValidationError);
  EXPECT_THROW((void)expected_rate_of(ch, std::vector<double>{0.5, 1.5}), ValidationError);
}

TEST(ExpectedRateOf, OptimumIsNotExceededByPerturbations) {
  const auto s = solve({{9.0, 3.0, 0.5}, {0.2, 0.3, 0.5}});
  for (const double delta : {-1e-3, 1e-3, 0.05}) {
    auto beta = s.alloc.beta;
    beta[0] = std::clamp(beta[0] + delta, 0.0, 1.0);
    EXPECT_LE(expected_rate_of(s.ch, beta), s.c_exp + 1e-15);
  }
}
