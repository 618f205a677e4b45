#include "qprice/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qprice {

namespace {

void check_multiplier(double multiplier) {
  if (!(multiplier > 0.0) || !std::isfinite(multiplier))
    throw std::invalid_argument("demand multiplier must be a finite value > 0");
}

Optimum at_price(const ProductSpec& spec, double price, double multiplier, OptimumMethod method,
                 bool clamped) {
  const double units = demand(spec, price, multiplier);
  return {price, units, reward(spec, price, units), method, clamped};
}

}  // namespace

std::string_view to_string(OptimumMethod method) noexcept {
  switch (method) {
    case OptimumMethod::Analytic: return "Analytic";
    case OptimumMethod::GridSearch: return "GridSearch";
    case OptimumMethod::LineSearch: return "LineSearch";
  }
  return "?";
}

void validate(const PriceBounds& bounds) {
  if (!std::isfinite(bounds.lo) || !std::isfinite(bounds.hi) || !(bounds.lo > 0.0) ||
      !(bounds.lo < bounds.hi))
    throw std::invalid_argument("price bounds need 0 < lo < hi");
}

PriceBounds ratio_bounds(const ProductSpec& spec, double lo_ratio, double hi_ratio) {
  return {lo_ratio * spec.base_price, hi_ratio * spec.base_price};
}

double profit_vertex(const ProductSpec& spec) {
  const double e = spec.elasticity;
  return spec.unit_cost / 2.0 + spec.base_price * (e - 1.0) / (2.0 * e);
}

Optimum analytic_optimum(const ProductSpec& spec, const PriceBounds& bounds, double multiplier) {
  if (!(spec.elasticity < 0.0))
    throw std::invalid_argument("analytic optimum needs a negative elasticity");
  validate(spec);
  validate(bounds);
  check_multiplier(multiplier);

  // Beyond the zero-demand price profit is identically 0; the quadratic
  // model only holds below it.
  const double upper = std::min(bounds.hi, zero_demand_price(spec));
  if (upper < bounds.lo) return at_price(spec, bounds.lo, multiplier, OptimumMethod::Analytic, true);

  const double vertex = profit_vertex(spec);
  const double price = std::clamp(vertex, bounds.lo, upper);
  return at_price(spec, price, multiplier, OptimumMethod::Analytic, price != vertex);
}

Optimum grid_search_optimum(const ProductSpec& spec, const PriceGrid& grid, double multiplier) {
  check_multiplier(multiplier);
  std::size_t best = 0;
  double best_profit = profit_at(spec, grid[0], multiplier);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double p = profit_at(spec, grid[i], multiplier);
    if (p > best_profit) {
      best = i;
      best_profit = p;
    }
  }
  return at_price(spec, grid[best], multiplier, OptimumMethod::GridSearch, false);
}

Optimum line_search_optimum(const ProductSpec& spec, const PriceBounds& bounds, double multiplier,
                            double tolerance) {
  validate(bounds);
  check_multiplier(multiplier);
  if (!(tolerance > 0.0)) throw std::invalid_argument("line search tolerance must be > 0");

  double a = bounds.lo;
  double b = bounds.hi;
  if (b - a < tolerance)
    return at_price(spec, 0.5 * (a + b), multiplier, OptimumMethod::LineSearch, false);

  const auto f = [&](double p) { return profit_at(spec, p, multiplier); };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);

  // Ties move left: past the zero-demand price profit is flat at 0 and the
  // maximum lies below.
  for (int iter = 0; iter < 500 && b - a >= tolerance; ++iter) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    }
  }

  const double mid = 0.5 * (a + b);
  double price = mid;
  double best = f(mid);
  bool clamped = false;
  for (double edge : {bounds.lo, bounds.hi}) {
    if (f(edge) > best) {
      price = edge;
      best = f(edge);
      clamped = true;
    }
  }
  return at_price(spec, price, multiplier, OptimumMethod::LineSearch, clamped);
}

}  // namespace qprice
