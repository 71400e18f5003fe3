#include "qbertrand/core_model.hpp"
#include "qbertrand/error.hpp"
#include "qbertrand/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qbertrand;

TEST(core_model, rejects_out_of_range_parameters) {
  EXPECT_THROW(MarketParams::make(3.5, 0.1, 0.0), Error);
  EXPECT_THROW(MarketParams::make(3.5, 0.1, 1.0), Error);
  EXPECT_THROW(MarketParams::make(3.5, 0.1, 1.5), Error);
  EXPECT_THROW(MarketParams::make(3.5, 3.5, 0.5), Error);
  EXPECT_THROW(MarketParams::make(3.5, -0.1, 0.5), Error);
  EXPECT_THROW(MarketParams::make(NAN, 0.1, 0.5), Error);
  EXPECT_NO_THROW(MarketParams::make(3.5, 0.0, 0.5));

  try {
    MarketParams::make(3.5, 0.1, 1.5);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    EXPECT_NE(std::string(e.what()).find("0 < b < 1"), std::string::npos);
  }
}

TEST(core_model, figure_preset) {
  const auto p = MarketParams::figure_preset(0.3);
  EXPECT_EQ(p.a, 3.5);
  EXPECT_EQ(p.c, 0.1);
  EXPECT_EQ(p.b, 0.3);
}

TEST(core_model, demand_examples) {
  const auto params = MarketParams::make(3.5, 0.1, 0.5);
  auto q = demand(params, {0.0, 0.0});
  EXPECT_EQ(q.qA, 3.5);
  EXPECT_EQ(q.qB, 3.5);
  q = demand(params, {2.0, 2.0});
  EXPECT_DOUBLE_EQ(q.qA, 2.5);
  EXPECT_DOUBLE_EQ(q.qB, 2.5);
  q = demand(params, {2.4, 2.4});
  EXPECT_NEAR(q.qA, 2.3, 1e-15);
  EXPECT_NEAR(q.qB, 2.3, 1e-15);
}

TEST(core_model, classical_profit_examples) {
  const auto params = MarketParams::make(3.5, 0.1, 0.5);
  EXPECT_EQ(classical_profit(params, {0.1, 7.3}).first, 0.0);
  auto u = classical_profit(params, {2.4, 2.4});
  EXPECT_NEAR(u.first, 5.29, 1e-12);
  EXPECT_NEAR(u.second, 5.29, 1e-12);
  u = classical_profit(params, {2.0, 2.0});
  EXPECT_NEAR(u.first, 4.75, 1e-12);
  EXPECT_NEAR(u.second, 4.75, 1e-12);
}

TEST(core_model, derived_constants_examples) {
  const auto d = derived_constants(MarketParams::make(3.5, 0.1, 0.5));
  EXPECT_DOUBLE_EQ(d.beta, -1.5);
  EXPECT_DOUBLE_EQ(d.alpha, 0.75);
  EXPECT_DOUBLE_EQ(d.disc, 6.25);
  EXPECT_NEAR(d.gamma_cap, std::sqrt(31.625), 1e-15);
  EXPECT_NEAR(d.gamma_cap, 5.623611, 1e-6);
}

TEST(core_model, properties_over_random_parameters) {
  FixedSeedSampler s(7);
  for (int i = 0; i < 500; ++i) {
    const auto params = MarketParams::make(s.uniform(0.5, 6.0), s.uniform(0.0, 0.4), s.open(0.0, 1.0));
    const auto d = derived_constants(params);
    EXPECT_LT(d.beta, -1.0);
    EXPECT_GT(d.gamma_cap, 0.0);
    EXPECT_EQ(d.real_candidates(), params.a >= 2.0 * std::sqrt(2.0 - params.b));

    // Role symmetry at symmetric prices.
    const double p = s.uniform(0.0, 10.0);
    const auto u = classical_profit(params, {p, p});
    EXPECT_EQ(u.first, u.second);

    // Demand is linear in own price with slope -1 and cross slope b.
    const PricePair base{s.uniform(0.0, 5.0), s.uniform(0.0, 5.0)};
    const double delta = 0.25;
    const auto q0 = demand(params, base);
    const auto q1 = demand(params, {base.p1 + delta, base.p2});
    EXPECT_NEAR(q1.qA - q0.qA, -delta, 1e-14);
    EXPECT_NEAR(q1.qB - q0.qB, params.b * delta, 1e-14);
  }
}

TEST(core_model, real_candidates_everywhere_at_figure_intercept) {
  for (int i = 1; i < 1000; ++i) {
    EXPECT_TRUE(derived_constants(MarketParams::make(3.5, 0.1, i / 1000.0)).real_candidates());
  }
}
