#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "qprice/baseline.hpp"

using namespace qprice;

namespace {
const ProductSpec kTv24{"Samsung 24\" HD", 80.0, 109.2, -0.5, 0.0};
const ProductSpec kMU6290{"Samsung 49\" 4K MU6290", 57.0, 444.7, -0.3, 0.0};
const ProductSpec kQ8F{"Samsung 55\" 4K Q8F", 60.0, 2011.6, -8.4, 0.0};
}  // namespace

TEST(ProfitVertex, ClosedForm) {
  EXPECT_NEAR(profit_vertex(kTv24), 163.8, 1e-9);
  ProductSpec s = kTv24;
  s.unit_cost = 20.0;
  EXPECT_NEAR(profit_vertex(s), 173.8, 1e-9);
}

TEST(AnalyticOptimum, InteriorVertex) {
  const auto o = analytic_optimum(kTv24, {54.6, 218.4});
  EXPECT_FALSE(o.clamped);
  EXPECT_EQ(o.method, OptimumMethod::Analytic);
  EXPECT_NEAR(o.price, 163.8, 1e-9);
  EXPECT_NEAR(o.demand, 60.0, 1e-9);
  EXPECT_NEAR(o.profit, 9828.0, 1e-6);
}

TEST(AnalyticOptimum, ClampsAtUpperBound) {
  const auto o = analytic_optimum(kMU6290, {222.35, 889.4});
  EXPECT_TRUE(o.clamped);
  EXPECT_DOUBLE_EQ(o.price, 889.4);
  EXPECT_NEAR(profit_vertex(kMU6290), 963.52, 0.01);
}

TEST(AnalyticOptimum, ClampsAtLowerBound) {
  // Vertex for Q8F is about 1125.5, well below 0.9 * p0.
  const auto o = analytic_optimum(kQ8F, {0.9 * kQ8F.base_price, 2.0 * kQ8F.base_price});
  EXPECT_TRUE(o.clamped);
  EXPECT_DOUBLE_EQ(o.price, 0.9 * kQ8F.base_price);
}

TEST(AnalyticOptimum, ClampsAtZeroDemandPrice) {
  // A cost near the zero-demand price pushes the vertex past it.
  ProductSpec s = kQ8F;
  s.unit_cost = 2000.0;
  const auto o = analytic_optimum(s, {1000.0, 4000.0});
  EXPECT_LE(o.price, zero_demand_price(s) + 1e-9);
  EXPECT_GE(o.profit, 0.0);
}

TEST(AnalyticOptimum, RejectsNonNegativeElasticity) {
  ProductSpec s = kTv24;
  s.elasticity = 0.0;
  EXPECT_THROW(analytic_optimum(s, {50.0, 200.0}), std::invalid_argument);
  EXPECT_THROW(analytic_optimum(kTv24, {200.0, 50.0}), std::invalid_argument);
  EXPECT_THROW(analytic_optimum(kTv24, {0.0, 50.0}), std::invalid_argument);
}

TEST(GridSearch, OnlyPositiveMarginWins) {
  ProductSpec s = kTv24;
  s.unit_cost = 100.0;
  const PriceGrid grid({90.0, 120.0});
  EXPECT_DOUBLE_EQ(grid_search_optimum(s, grid).price, 120.0);
}

TEST(GridSearch, DefaultGridReference) {
  const auto o = grid_search_optimum(kTv24, default_price_grid(kTv24));
  EXPECT_EQ(o.method, OptimumMethod::GridSearch);
  EXPECT_NEAR(o.price, 161.07, 1e-9);
  EXPECT_NEAR(o.profit, 9825.27, 0.01);
}

TEST(GridSearch, TieGoesToLowestPrice) {
  // Revenue at p0 and 2 p0 is identical for e = -0.5.
  const PriceGrid grid({109.2, 218.4});
  EXPECT_DOUBLE_EQ(grid_search_optimum(kTv24, grid).price, 109.2);
}

TEST(GridSearch, RefinementApproachesVertex) {
  const double vertex = profit_vertex(kTv24);
  double previous = std::abs(grid_search_optimum(kTv24, default_price_grid(kTv24, 21)).price - vertex);
  for (std::size_t n : {41u, 81u, 161u}) {
    const auto grid = default_price_grid(kTv24, n);
    const double gap = std::abs(grid_search_optimum(kTv24, grid).price - vertex);
    EXPECT_LE(gap, previous + 1e-12) << n;
    EXPECT_LE(gap, grid.max_step()) << n;
    previous = gap;
  }
}

TEST(LineSearch, FindsVertex) {
  const auto o = line_search_optimum(kTv24, {54.6, 218.4}, 1.0, 1e-4);
  EXPECT_EQ(o.method, OptimumMethod::LineSearch);
  EXPECT_NEAR(o.price, 163.8, 1e-3);
  EXPECT_FALSE(o.clamped);
}

TEST(LineSearch, CollapsedBracketReturnsMidpoint) {
  const auto o = line_search_optimum(kTv24, {100.0, 100.00005}, 1.0, 1e-4);
  EXPECT_DOUBLE_EQ(o.price, 100.000025);
}

TEST(LineSearch, FlatClippedRegionStillBeatsBounds) {
  // Everything above ~2251 sells nothing; the search must not stall there.
  const PriceBounds b{2300.0, 8000.0};
  const auto o = line_search_optimum(kQ8F, b, 1.0, 1e-4);
  EXPECT_GE(o.profit, profit_at(kQ8F, b.lo));
  EXPECT_GE(o.profit, profit_at(kQ8F, b.hi));
}

TEST(LineSearch, ReportsClampedBound) {
  const auto o = line_search_optimum(kMU6290, {222.35, 889.4}, 1.0, 1e-4);
  EXPECT_NEAR(o.price, 889.4, 1e-3);
  EXPECT_GE(o.profit, profit_at(kMU6290, 889.4));
}

TEST(LineSearch, RejectsBadTolerance) {
  EXPECT_THROW(line_search_optimum(kTv24, {54.6, 218.4}, 1.0, 0.0), std::invalid_argument);
}

TEST(LineSearch, DominatesGridUpToDiscretisation) {
  for (double c : {0.0, 30.0}) {
    ProductSpec s = kTv24;
    s.unit_cost = c;
    const auto grid = default_price_grid(s);
    const auto g = grid_search_optimum(s, grid);
    const auto l = line_search_optimum(s, ratio_bounds(s), 1.0, 1e-4);
    // |d profit / dp| is bounded by D0 * (1 + |e| * (hi - c) / p0) on the span.
    const double lipschitz = s.base_demand * (1 + std::abs(s.elasticity) * (grid.back() - c) / s.base_price);
    EXPECT_GE(l.profit, g.profit - lipschitz * grid.max_step());
  }
}
