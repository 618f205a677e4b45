// Randomised property checks over generated specs and prices.
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "qprice/baseline.hpp"
#include "qprice/pricing.hpp"
#include "qprice/qlearn.hpp"
#include "qprice/rng.hpp"

using namespace qprice;

namespace {

ProductSpec random_spec(Rng& rng) {
  ProductSpec s;
  s.name = "p";
  s.base_demand = 1.0 + 199.0 * rng.uniform();
  s.base_price = 10.0 + 2990.0 * rng.uniform();
  s.elasticity = -(0.05 + 9.95 * rng.uniform());
  s.unit_cost = rng.uniform() < 0.5 ? 0.0 : 0.6 * s.base_price * rng.uniform();
  return s;
}

}  // namespace

TEST(Properties, DemandIsMonotoneNonIncreasing) {
  Rng rng(101);
  for (int i = 0; i < 1000; ++i) {
    const auto s = random_spec(rng);
    const double a = 4.0 * s.base_price * rng.uniform() + 1e-6;
    const double b = 4.0 * s.base_price * rng.uniform() + 1e-6;
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double m = 0.5 + rng.uniform();
    ASSERT_GE(demand(s, lo, m), demand(s, hi, m)) << i;
    ASSERT_GE(demand(s, hi, m), 0.0);
  }
}

TEST(Properties, MultiplierDoesNotMoveOptima) {
  Rng rng(202);
  for (int i = 0; i < 300; ++i) {
    const auto s = random_spec(rng);
    const auto grid = default_price_grid(s);
    const auto bounds = ratio_bounds(s);
    const double m = 0.2 + 2.0 * rng.uniform();
    EXPECT_EQ(grid_search_optimum(s, grid, 1.0).price, grid_search_optimum(s, grid, m).price);
    EXPECT_NEAR(analytic_optimum(s, bounds, 1.0).price, analytic_optimum(s, bounds, m).price, 1e-9);
  }
}

TEST(Properties, OptimaStayInsideBounds) {
  Rng rng(303);
  for (int i = 0; i < 300; ++i) {
    const auto s = random_spec(rng);
    const auto bounds = ratio_bounds(s);
    for (const auto& o : {analytic_optimum(s, bounds), line_search_optimum(s, bounds)}) {
      EXPECT_GE(o.price, bounds.lo);
      EXPECT_LE(o.price, bounds.hi);
      EXPECT_GE(o.profit, profit_at(s, bounds.lo) - 1e-9 * std::abs(o.profit));
      EXPECT_GE(o.profit, profit_at(s, bounds.hi) - 1e-9 * std::abs(o.profit));
    }
    const auto a = analytic_optimum(s, bounds);
    EXPECT_LE(a.price, std::max(bounds.lo, zero_demand_price(s)) + 1e-9);
  }
}

TEST(Properties, AnalyticBeatsEveryGridPoint) {
  Rng rng(404);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_spec(rng);
    const auto a = analytic_optimum(s, ratio_bounds(s));
    const auto g = grid_search_optimum(s, default_price_grid(s));
    EXPECT_GE(a.profit, g.profit - 1e-9 * std::abs(g.profit));
  }
}

TEST(Properties, SelectActionNeverLeavesRange) {
  Rng rng(505);
  QTable q(3, 9);
  for (int i = 0; i < 5000; ++i) {
    const auto a = select_action(q, static_cast<std::size_t>(i % 3), rng.uniform(), rng);
    ASSERT_LT(a, 9u);
  }
}
