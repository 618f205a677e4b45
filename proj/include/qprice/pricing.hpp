#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qprice {

/// Market parameters of a single product.
struct ProductSpec {
  std::string name;
  double base_demand = 0.0;  ///< units sold per period at the base price
  double base_price = 0.0;   ///< anchor price, > 0
  double elasticity = 0.0;   ///< < 0 for every accepted product
  double unit_cost = 0.0;    ///< variable cost per unit, < base_price

  bool operator==(const ProductSpec&) const = default;
};

/// Throws std::invalid_argument naming the violated constraint.
void validate(const ProductSpec& spec);

enum class DayType : int { Weekday = 0, Weekend = 1 };

inline constexpr std::array<DayType, 2> kDayTypes{DayType::Weekday, DayType::Weekend};

std::string_view to_string(DayType day) noexcept;
/// Accepts "Weekday"/"Weekend" case-insensitively; throws std::invalid_argument otherwise.
DayType parse_day_type(std::string_view text);

/// Multiplicative demand scaling per day type.
struct DayModulation {
  double weekday_multiplier = 1.0;
  double weekend_multiplier = 1.2;

  double multiplier(DayType day) const noexcept {
    return day == DayType::Weekday ? weekday_multiplier : weekend_multiplier;
  }
  bool operator==(const DayModulation&) const = default;
};

void validate(const DayModulation& modulation);

/// A (product, day type) pair of the active catalog.
struct MarketState {
  std::size_t product_index = 0;
  DayType day_type = DayType::Weekday;

  bool operator==(const MarketState&) const = default;
};

/// Dense index of a market state: product_index * 2 + day type.
std::size_t state_index(const MarketState& state, std::size_t product_count);
inline constexpr std::size_t state_space_size(std::size_t product_count) noexcept {
  return product_count * kDayTypes.size();
}

/// Ordered candidate prices. Strictly increasing, positive, at least two entries.
class PriceGrid {
 public:
  explicit PriceGrid(std::vector<double> prices);

  /// `points` prices spaced uniformly over [lo, hi], both ends included.
  static PriceGrid uniform(double lo, double hi, std::size_t points);

  std::span<const double> prices() const noexcept { return prices_; }
  std::size_t size() const noexcept { return prices_.size(); }
  double operator[](std::size_t i) const noexcept { return prices_[i]; }
  double front() const noexcept { return prices_.front(); }
  double back() const noexcept { return prices_.back(); }
  /// Largest gap between neighbouring prices.
  double max_step() const noexcept;

  bool operator==(const PriceGrid&) const = default;

 private:
  std::vector<double> prices_;
};

/// Linear-elasticity demand, clipped at zero:
///   max(0, m * (D0 + D0 * e * (price - p0) / p0))
double demand(const ProductSpec& spec, double price, double multiplier = 1.0) noexcept;

/// Profit of selling `units` at `price`: (price - c) * units.
double reward(const ProductSpec& spec, double price, double units) noexcept;

/// Profit at `price` with demand evaluated from the model.
inline double profit_at(const ProductSpec& spec, double price, double multiplier = 1.0) noexcept {
  return reward(spec, price, demand(spec, price, multiplier));
}

/// Price at which unclipped demand reaches zero: p0 * (1 - 1/e).
double zero_demand_price(const ProductSpec& spec) noexcept;

struct CurvePoint {
  double price = 0.0;
  double revenue = 0.0;  ///< price * demand, not profit
  double demand = 0.0;

  bool operator==(const CurvePoint&) const = default;
};

/// One point per price, in the given order.
std::vector<CurvePoint> revenue_curve(const ProductSpec& spec, std::span<const double> prices,
                                      double multiplier = 1.0);
inline std::vector<CurvePoint> revenue_curve(const ProductSpec& spec, const PriceGrid& grid,
                                             double multiplier = 1.0) {
  return revenue_curve(spec, grid.prices(), multiplier);
}

inline constexpr double kDefaultGridLoRatio = 0.5;
inline constexpr double kDefaultGridHiRatio = 2.0;
inline constexpr std::size_t kDefaultGridPoints = 21;

/// Uniform grid over [0.5 * p0, 2.0 * p0].
PriceGrid default_price_grid(const ProductSpec& spec, std::size_t num_points = kDefaultGridPoints);

/// Uniform grid over [lo_ratio * p0, hi_ratio * p0].
PriceGrid ratio_price_grid(const ProductSpec& spec, double lo_ratio, double hi_ratio,
                           std::size_t num_points);

}  // namespace qprice
