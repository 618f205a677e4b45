#include "qprice/pricing.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qprice {

void validate(const ProductSpec& spec) {
  const auto fail = [&](const std::string& what) {
    throw std::invalid_argument("product '" + spec.name + "': " + what);
  };
  if (!std::isfinite(spec.base_price) || !std::isfinite(spec.base_demand) ||
      !std::isfinite(spec.elasticity) || !std::isfinite(spec.unit_cost))
    fail("parameters must be finite");
  if (spec.base_price <= 0.0) fail("base_price must be > 0");
  if (spec.base_demand < 0.0) fail("base_demand must be >= 0");
  if (spec.unit_cost < 0.0) fail("unit_cost must be >= 0");
  if (spec.elasticity >= 0.0) fail("elasticity must be < 0");
  if (spec.unit_cost >= spec.base_price) fail("unit_cost must be < base_price");
}

std::string_view to_string(DayType day) noexcept {
  return day == DayType::Weekday ? "Weekday" : "Weekend";
}

DayType parse_day_type(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "weekday") return DayType::Weekday;
  if (lower == "weekend") return DayType::Weekend;
  throw std::invalid_argument("unknown day type '" + std::string(text) + "'");
}

void validate(const DayModulation& modulation) {
  if (!(modulation.weekday_multiplier > 0.0) || !std::isfinite(modulation.weekday_multiplier))
    throw std::invalid_argument("weekday_multiplier must be a finite value > 0");
  if (!(modulation.weekend_multiplier > 0.0) || !std::isfinite(modulation.weekend_multiplier))
    throw std::invalid_argument("weekend_multiplier must be a finite value > 0");
}

std::size_t state_index(const MarketState& state, std::size_t product_count) {
  if (state.product_index >= product_count)
    throw std::out_of_range("product index " + std::to_string(state.product_index) +
                            " outside catalog of " + std::to_string(product_count));
  return state.product_index * kDayTypes.size() + static_cast<std::size_t>(state.day_type);
}

PriceGrid::PriceGrid(std::vector<double> prices) : prices_(std::move(prices)) {
  if (prices_.size() < 2) throw std::invalid_argument("price grid needs at least 2 prices");
  for (std::size_t i = 0; i < prices_.size(); ++i) {
    if (!std::isfinite(prices_[i]) || prices_[i] <= 0.0)
      throw std::invalid_argument("price grid values must be finite and > 0");
    if (i > 0 && !(prices_[i] > prices_[i - 1]))
      throw std::invalid_argument("price grid must be strictly increasing");
  }
}

PriceGrid PriceGrid::uniform(double lo, double hi, std::size_t points) {
  if (points < 2) throw std::invalid_argument("price grid needs at least 2 points");
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("price grid needs 0 < lo < hi");
  std::vector<double> prices(points);
  const double span = hi - lo;
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) prices[i] = lo + span * static_cast<double>(i) / last;
  prices.back() = hi;
  return PriceGrid(std::move(prices));
}

double PriceGrid::max_step() const noexcept {
  double step = 0.0;
  for (std::size_t i = 1; i < prices_.size(); ++i) step = std::max(step, prices_[i] - prices_[i - 1]);
  return step;
}

double demand(const ProductSpec& spec, double price, double multiplier) noexcept {
  const double d0 = spec.base_demand;
  const double units = multiplier * (d0 + d0 * spec.elasticity * (price - spec.base_price) / spec.base_price);
  return std::max(0.0, units);
}

double reward(const ProductSpec& spec, double price, double units) noexcept {
  return (price - spec.unit_cost) * units;
}

double zero_demand_price(const ProductSpec& spec) noexcept {
  return spec.base_price * (1.0 - 1.0 / spec.elasticity);
}

std::vector<CurvePoint> revenue_curve(const ProductSpec& spec, std::span<const double> prices,
                                      double multiplier) {
  std::vector<CurvePoint> curve;
  curve.reserve(prices.size());
  for (double p : prices) {
    const double units = demand(spec, p, multiplier);
    curve.push_back({p, p * units, units});
  }
  return curve;
}

PriceGrid default_price_grid(const ProductSpec& spec, std::size_t num_points) {
  return ratio_price_grid(spec, kDefaultGridLoRatio, kDefaultGridHiRatio, num_points);
}

PriceGrid ratio_price_grid(const ProductSpec& spec, double lo_ratio, double hi_ratio,
                           std::size_t num_points) {
  return PriceGrid::uniform(lo_ratio * spec.base_price, hi_ratio * spec.base_price, num_points);
}

}  // namespace qprice
