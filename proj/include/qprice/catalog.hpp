#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qprice/pricing.hpp"

namespace qprice {

enum class RejectReason {
  NonNegativeElasticity,
  NonPositivePrice,
  CostExceedsPrice,
  DuplicateName,
  MalformedField,
};

std::string_view to_string(RejectReason reason) noexcept;

struct RowOutcome {
  std::size_t line = 0;  ///< 1-based line in the input; the header is line 1
  bool accepted = false;
  RejectReason reason = RejectReason::MalformedField;  ///< meaningful when rejected
  std::string detail;
};

struct ValidationReport {
  std::vector<RowOutcome> rows;

  std::size_t accepted_count() const noexcept;
  std::size_t rejected_count() const noexcept;
};

struct ParsedCatalog {
  std::vector<ProductSpec> products;
  ValidationReport report;
};

/// Parses catalog CSV with header
///   product_name,price_elasticity,base_price,base_demand[,unit_cost]
/// Bad rows are reported and skipped. Throws ParseError if the header is
/// missing or wrong.
ParsedCatalog parse_catalog(std::string_view csv);

/// Writes the five-column form of the catalog, header included.
std::string serialize_catalog(const std::vector<ProductSpec>& products);

/// The fourteen-product reference catalog (elasticity, price and demand as
/// published; zero unit cost), in table order.
std::vector<ProductSpec> sample_catalog();

/// Human-readable report, one line per input row.
std::string render_validation_report(const ValidationReport& report);

}  // namespace qprice
