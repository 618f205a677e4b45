#pragma once

#include <string_view>

#include "qprice/pricing.hpp"

namespace qprice {

enum class OptimumMethod { Analytic, GridSearch, LineSearch };

std::string_view to_string(OptimumMethod method) noexcept;

struct PriceBounds {
  double lo = 0.0;
  double hi = 0.0;
};

/// Throws std::invalid_argument unless 0 < lo < hi.
void validate(const PriceBounds& bounds);

/// [lo_ratio * p0, hi_ratio * p0]
PriceBounds ratio_bounds(const ProductSpec& spec, double lo_ratio = kDefaultGridLoRatio,
                         double hi_ratio = kDefaultGridHiRatio);

struct Optimum {
  double price = 0.0;
  double demand = 0.0;
  double profit = 0.0;
  OptimumMethod method = OptimumMethod::Analytic;
  /// The unconstrained optimum lies outside the allowed interval.
  bool clamped = false;
};

/// Unconstrained profit vertex of the linear model: c/2 + p0 (e - 1) / (2e).
double profit_vertex(const ProductSpec& spec);

/// Closed-form maximiser clamped to [lo, min(hi, zero-demand price)].
/// Throws std::invalid_argument when elasticity >= 0.
Optimum analytic_optimum(const ProductSpec& spec, const PriceBounds& bounds,
                         double multiplier = 1.0);

/// Exhaustive maximiser over the grid, lowest price on ties.
Optimum grid_search_optimum(const ProductSpec& spec, const PriceGrid& grid,
                            double multiplier = 1.0);

/// Golden-section maximisation of profit over the bounds. Stops when the
/// bracket is narrower than `tolerance`. The returned price never has lower
/// profit than either bound.
Optimum line_search_optimum(const ProductSpec& spec, const PriceBounds& bounds,
                            double multiplier = 1.0, double tolerance = 1e-4);

}  // namespace qprice
