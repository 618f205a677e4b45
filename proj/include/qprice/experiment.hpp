#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qprice/baseline.hpp"
#include "qprice/pricing.hpp"
#include "qprice/qlearn.hpp"

namespace qprice {

enum class CostPolicyKind { FromCatalog, ZeroCost, FractionOfBasePrice };

struct CostPolicy {
  CostPolicyKind kind = CostPolicyKind::FromCatalog;
  double fraction = 0.0;  ///< used by FractionOfBasePrice, in [0, 1)

  /// Unit cost to use for `spec` under this policy.
  double unit_cost_for(const ProductSpec& spec) const noexcept;
  bool operator==(const CostPolicy&) const = default;
};

std::string_view to_string(CostPolicyKind kind) noexcept;
/// "catalog", "zero" or "fraction"; throws std::invalid_argument otherwise.
CostPolicyKind parse_cost_policy(std::string_view text);

struct ExperimentConfig {
  Hyperparams hyperparams;  ///< hyperparams.seed is replaced per product
  std::size_t grid_points = kDefaultGridPoints;
  double grid_lo_ratio = kDefaultGridLoRatio;
  double grid_hi_ratio = kDefaultGridHiRatio;
  DayModulation modulation;
  CostPolicy cost_policy;
  std::uint64_t master_seed = 0;
  double line_search_tolerance = 1e-4;
  double demand_noise_sd = 0.0;
  /// Worker threads for run_experiment; 0 picks min(products, hardware threads).
  std::size_t jobs = 1;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ExperimentConfig& config);

/// Flat JSON object with the field names used by config_to_json. Missing keys
/// keep the values already in `base`; unknown keys or wrong types throw
/// ParseError whose where() is the key.
ExperimentConfig config_from_json(std::string_view json, ExperimentConfig base = {});
std::string config_to_json(const ExperimentConfig& config);

struct MethodResult {
  double price = 0.0;
  double demand = 0.0;
  double profit = 0.0;

  bool operator==(const MethodResult&) const = default;
};

struct ComparisonRow {
  std::string product_name;
  DayType day_type = DayType::Weekday;
  double unit_cost = 0.0;
  MethodResult rl;
  MethodResult analytic;
  MethodResult grid_search;
  MethodResult line_search;
  bool analytic_clamped = false;
  bool line_search_clamped = false;
  /// RL profit / best baseline profit; NaN when no baseline profit is positive.
  double rl_vs_best_profit_ratio = 0.0;
  /// Set when this product could not be processed; the numbers are then NaN.
  std::optional<std::string> error;
};

/// Per-product seed used by run_experiment.
inline std::uint64_t product_seed(const ExperimentConfig& config, std::size_t product_index) {
  return split_seed(config.master_seed, product_index);
}

/// Trains and optimises every product; two rows (Weekday, Weekend) per product
/// in catalog order. Output does not depend on config.jobs.
std::vector<ComparisonRow> run_experiment(const std::vector<ProductSpec>& catalog,
                                          const ExperimentConfig& config);

/// Same rows with the RL columns left empty (NaN) and the ratio unset.
std::vector<ComparisonRow> run_baselines(const std::vector<ProductSpec>& catalog,
                                         const ExperimentConfig& config);

enum class ReportFormat { Csv, Json, Markdown };

/// "csv", "json", "markdown"/"md"; throws std::invalid_argument otherwise.
ReportFormat parse_report_format(std::string_view text);

/// Comparison report. `include_rl` false drops the RL columns (baseline-only runs).
std::string render_report(const std::vector<ComparisonRow>& rows, ReportFormat format,
                          const ExperimentConfig& config, bool include_rl = true);

/// Reads the "rows" array of a JSON report back.
std::vector<ComparisonRow> rows_from_json(std::string_view json);

/// Long-format CSV: product,day,price,demand,revenue,profit with
/// `samples_per_curve` prices spread uniformly over the configured span.
std::string export_revenue_curves(const std::vector<ProductSpec>& catalog,
                                  const ExperimentConfig& config,
                                  std::size_t samples_per_curve);

/// Version string reported in JSON provenance.
std::string_view library_version() noexcept;

}  // namespace qprice
