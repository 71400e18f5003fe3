#include "qbertrand/error.hpp"
#include "qbertrand/numerics.hpp"
#include "qbertrand/quantum_engine.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace qbertrand;
using namespace qbertrand::numerics;

TEST(golden_max, concave_quadratic) {
  BracketSearchConfig cfg{0.0, 10.0};
  const auto r = golden_max([](double x) { return -(x - 2.0) * (x - 2.0); }, cfg);
  EXPECT_NEAR(r.argmax, 2.0, 1e-7);
  EXPECT_FALSE(r.boundary);
}

TEST(golden_max, vertex_of_random_quadratics) {
  for (int k = 1; k <= 50; ++k) {
    const double vertex = 0.173 * k;
    const double curv = 0.1 + 0.05 * k;
    BracketSearchConfig cfg{0.0, 10.0};
    const auto r = golden_max([&](double x) { return 3.0 - curv * (x - vertex) * (x - vertex); }, cfg);
    EXPECT_NEAR(r.argmax, vertex, 1e-7) << k;
  }
}

TEST(golden_max, monotone_hits_boundary) {
  BracketSearchConfig cfg{0.0, 1.0};
  const auto r = golden_max([](double x) { return x; }, cfg);
  EXPECT_TRUE(r.boundary);
  EXPECT_EQ(r.argmax, 1.0);
  EXPECT_EQ(r.value, 1.0);
}

TEST(golden_max, payoff_at_max_entanglement) {
  const auto params = MarketParams::make(3.5, 0.1, 0.5);
  const auto angle = EntanglementAngle::maximal();
  BracketSearchConfig cfg{0.0, 36.0};
  const auto r = golden_max([&](double p) { return quantum_payoff(params, {p, 2.0}, angle).uA; }, cfg);
  EXPECT_NEAR(r.argmax, 2.0, 1e-6);
}

TEST(golden_max, reports_non_finite_abscissa) {
  BracketSearchConfig cfg{-1.0, 1.0, 5};
  try {
    golden_max([](double x) { return x == 0.0 ? NAN : x; }, cfg);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_EQ(e.at(), 0.0);
    EXPECT_EQ(e.code(), ErrorCode::Evaluation);
  }
}

TEST(golden_max, validates_config) {
  auto f = [](double x) { return x; };
  EXPECT_THROW(golden_max(f, {1.0, 0.0}), Error);
  EXPECT_THROW(golden_max(f, {0.0, 1.0, 2}), Error);
  EXPECT_THROW(golden_max(f, {0.0, 1.0, 10, 0.0}), Error);
}

TEST(damped_root_2d, linear_system) {
  const auto r = damped_root_2d([](const Vec2& x) { return Vec2{x[0] - 1.0, x[1] - 2.0}; }, {0.0, 0.0});
  ASSERT_TRUE(r.converged());
  EXPECT_NEAR(r.root[0], 1.0, 1e-12);
  EXPECT_NEAR(r.root[1], 2.0, 1e-12);
  EXPECT_LT(r.residual, kRootTol);
}

TEST(damped_root_2d, max_entangled_first_order_system) {
  const double a = 3.5, b = 0.5;
  auto br = [&](double p) { return (b * p * p + a * p - 1.0) / (2.0 * p); };
  const auto r = damped_root_2d([&](const Vec2& x) { return Vec2{x[0] - br(x[1]), x[1] - br(x[0])}; }, {2.1, 1.9});
  ASSERT_TRUE(r.converged());
  EXPECT_NEAR(r.root[0], 2.0, 1e-12);
  EXPECT_NEAR(r.root[1], 2.0, 1e-12);
}

TEST(damped_root_2d, no_root_reports_without_throwing) {
  // x^2 + 1 has no real root; the iteration wanders until the budget runs out
  // or the Jacobian degenerates.
  RootResult r;
  EXPECT_NO_THROW(r = damped_root_2d([](const Vec2& x) { return Vec2{x[0] * x[0] + 1.0, x[1]}; }, {3.0, 0.0}));
  EXPECT_FALSE(r.converged());
}

TEST(damped_root_2d, singular_jacobian) {
  const auto r = damped_root_2d([](const Vec2& x) { return Vec2{x[0] + x[1] - 1.0, 2.0 * (x[0] + x[1])}; }, {0.0, 0.0});
  EXPECT_EQ(r.status, RootStatus::Singular);
}

TEST(damped_root_2d, non_finite_seed_throws) {
  EXPECT_THROW(damped_root_2d([](const Vec2&) { return Vec2{NAN, 0.0}; }, {0.0, 0.0}), EvaluationError);
}

TEST(damped_root_2d, residual_below_tol_at_every_reported_root) {
  for (int k = 1; k <= 20; ++k) {
    const double t = 0.3 * k;
    const auto r = damped_root_2d(
        [&](const Vec2& x) { return Vec2{x[0] * x[0] - t, x[0] * x[1] - 1.0}; }, {1.0 + 0.1 * k, 1.0});
    ASSERT_TRUE(r.converged()) << k;
    EXPECT_LT(r.residual, kRootTol);
    EXPECT_NEAR(r.root[0], std::sqrt(t), 1e-10);
  }
}

TEST(finite_diff_2nd, examples) {
  EXPECT_NEAR(finite_diff_2nd([](double x) { return x * x; }, 0.7, 1e-4), 2.0, 1e-6);
  EXPECT_NEAR(finite_diff_2nd([](double x) { return x * x * x; }, 1.0, 1e-4), 6.0, 1e-5);

  const auto params = MarketParams::make(3.5, 0.1, 0.5);
  const auto angle = EntanglementAngle::maximal();
  const double d2 = finite_diff_2nd([&](double p) { return quantum_payoff(params, {p, 2.0}, angle).uA; }, 1.3, 1e-3);
  EXPECT_NEAR(d2, -3.8, 1e-5);
}

TEST(finite_diff_2nd, quadratic_error_across_steps) {
  auto f = [](double x) { return 3.0 * x * x - 2.0 * x + 1.0; };
  for (double h : {1e-5, 1e-4, 1e-3}) EXPECT_LT(std::abs(finite_diff_2nd(f, 0.4, h) - 6.0) / 6.0, 1e-5) << h;
  for (double h : {1e-4, 1e-3}) EXPECT_LT(std::abs(finite_diff_2nd(f, 0.4, h) - 6.0) / 6.0, 1e-8) << h;
}

TEST(finite_diff_2nd, non_finite_throws) {
  EXPECT_THROW(finite_diff_2nd([](double x) { return 1.0 / x; }, 0.0, 1e-3), EvaluationError);
}

TEST(linspace, examples) {
  EXPECT_EQ(linspace(0.0, 1.0, 3), (std::vector<double>{0.0, 0.5, 1.0}));
  const auto g = linspace(0.01, 0.99, 99);
  ASSERT_EQ(g.size(), 99u);
  EXPECT_EQ(g.front(), 0.01);
  EXPECT_EQ(g.back(), 0.99);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_NEAR(g[i] - g[i - 1], 0.01, 1e-15);

  // Five points over [0, pi] have spacing pi/4, so pi/4 is the second point;
  // four points do not contain it.
  const auto five = linspace(0.0, std::numbers::pi, 5);
  EXPECT_NEAR(five[1], std::numbers::pi / 4, 1e-15);
  for (double x : linspace(0.0, std::numbers::pi, 4)) EXPECT_GT(std::abs(x - std::numbers::pi / 4), 0.1);

  EXPECT_THROW(linspace(0.0, 1.0, 1), Error);
  EXPECT_EQ(linspace(0.2, 0.7, 11), linspace(0.2, 0.7, 11));
}
