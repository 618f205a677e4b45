#include "qprice/catalog.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <string>

#include "qprice/text.hpp"

namespace qprice {

namespace {

constexpr std::array<std::string_view, 5> kColumns{"product_name", "price_elasticity", "base_price",
                                                   "base_demand", "unit_cost"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

}  // namespace

std::string_view to_string(RejectReason reason) noexcept {
  switch (reason) {
    case RejectReason::NonNegativeElasticity: return "NonNegativeElasticity";
    case RejectReason::NonPositivePrice: return "NonPositivePrice";
    case RejectReason::CostExceedsPrice: return "CostExceedsPrice";
    case RejectReason::DuplicateName: return "DuplicateName";
    case RejectReason::MalformedField: return "MalformedField";
  }
  return "?";
}

std::size_t ValidationReport::accepted_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const RowOutcome& r) { return r.accepted; }));
}

std::size_t ValidationReport::rejected_count() const noexcept {
  return rows.size() - accepted_count();
}

ParsedCatalog parse_catalog(std::string_view csv) {
  const auto lines = split_lines(csv);
  if (lines.empty() || is_blank(lines[0]))
    throw ParseError("line 1", "missing header row");

  const auto header = split_csv_record(lines[0]);
  bool header_ok = header && (header->size() == 4 || header->size() == 5);
  if (header_ok)
    for (std::size_t i = 0; i < header->size(); ++i)
      if (trim((*header)[i]) != kColumns[i]) header_ok = false;
  if (!header_ok)
    throw ParseError("line 1",
                     "expected header product_name,price_elasticity,base_price,base_demand[,unit_cost]");
  const std::size_t columns = header->size();

  ParsedCatalog out;
  std::set<std::string, std::less<>> seen;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (is_blank(lines[li])) continue;
    RowOutcome outcome;
    outcome.line = li + 1;
    const auto reject = [&](RejectReason reason, std::string detail) {
      outcome.reason = reason;
      outcome.detail = std::move(detail);
      out.report.rows.push_back(outcome);
    };

    const auto fields = split_csv_record(lines[li]);
    if (!fields) {
      reject(RejectReason::MalformedField, "unbalanced quotes");
      continue;
    }
    if (fields->size() != columns) {
      reject(RejectReason::MalformedField, "expected " + std::to_string(columns) + " columns, got " +
                                               std::to_string(fields->size()));
      continue;
    }

    ProductSpec spec;
    spec.name = std::string(trim((*fields)[0]));
    if (spec.name.empty()) {
      reject(RejectReason::MalformedField, "empty product_name");
      continue;
    }
    std::array<double, 4> numbers{};  // elasticity, price, demand, cost
    bool numbers_ok = true;
    for (std::size_t c = 1; c < columns; ++c) {
      const auto v = parse_number((*fields)[c]);
      if (!v) {
        reject(RejectReason::MalformedField,
               std::string(kColumns[c]) + " '" + (*fields)[c] + "' is not a finite number");
        numbers_ok = false;
        break;
      }
      numbers[c - 1] = *v;
    }
    if (!numbers_ok) continue;
    spec.elasticity = numbers[0];
    spec.base_price = numbers[1];
    spec.base_demand = numbers[2];
    spec.unit_cost = columns == 5 ? numbers[3] : 0.0;

    if (spec.base_price <= 0.0) {
      reject(RejectReason::NonPositivePrice, "base_price " + format_number(spec.base_price) + " must be > 0");
    } else if (spec.elasticity >= 0.0) {
      reject(RejectReason::NonNegativeElasticity,
             "price_elasticity " + format_number(spec.elasticity) + " must be < 0");
    } else if (spec.base_demand < 0.0) {
      reject(RejectReason::MalformedField, "base_demand " + format_number(spec.base_demand) + " must be >= 0");
    } else if (spec.unit_cost < 0.0) {
      reject(RejectReason::MalformedField, "unit_cost " + format_number(spec.unit_cost) + " must be >= 0");
    } else if (spec.unit_cost >= spec.base_price) {
      reject(RejectReason::CostExceedsPrice, "unit_cost " + format_number(spec.unit_cost) +
                                                 " must be below base_price " +
                                                 format_number(spec.base_price));
    } else if (seen.contains(spec.name)) {
      reject(RejectReason::DuplicateName, "product_name '" + spec.name + "' already defined");
    } else {
      seen.insert(spec.name);
      outcome.accepted = true;
      out.report.rows.push_back(outcome);
      out.products.push_back(std::move(spec));
    }
  }
  return out;
}

std::string serialize_catalog(const std::vector<ProductSpec>& products) {
  std::string out = "product_name,price_elasticity,base_price,base_demand,unit_cost\n";
  for (const auto& p : products) {
    out += csv_field(p.name);
    out += "," + format_number(p.elasticity);
    out += "," + format_number(p.base_price);
    out += "," + format_number(p.base_demand);
    out += "," + format_number(p.unit_cost);
    out += '\n';
  }
  return out;
}

std::vector<ProductSpec> sample_catalog() {
  // name, base demand, base price, elasticity, unit cost
  return {
      {"Samsung 24\" HD", 80.0, 109.2, -0.5, 0.0},
      {"Samsung 55\" 4K", 54.0, 674.3, -1.7, 0.0},
      {"Hisense 65\" 4K", 49.0, 1412.1, -1.1, 0.0},
      {"Samsung 40\" FHD", 67.0, 260.5, -0.7, 0.0},
      {"Samsung 49\" 4K MU6290", 57.0, 444.7, -0.3, 0.0},
      {"Samsung 49\" 4K Q6F", 97.0, 829.0, -4.4, 0.0},
      {"Samsung 50\" FHD", 56.0, 418.4, -0.8, 0.0},
      {"Samsung 55\" 4K Q8F", 60.0, 2011.6, -8.4, 0.0},
      {"Samsung 65\" 4K Q7F", 60.0, 2411.6, -7.8, 0.0},
      {"Samsung 24\" HD UN24H4500", 40.0, 142.7, -1.9, 0.0},
      {"Sony 40\" FHD", 27.0, 423.8, -0.8, 0.0},
      {"Sony 43\" 4K UHD", 154.0, 648.0, -5.6, 0.0},
      {"VIZIO 39\" FHD", 59.0, 249.8, -1.8, 0.0},
      {"VIZIO 70\" 4K XHDR", 36.0, 1300.0, -6.5, 0.0},
  };
}

std::string render_validation_report(const ValidationReport& report) {
  std::string out;
  for (const auto& row : report.rows) {
    out += "line " + std::to_string(row.line) + ": ";
    if (row.accepted) {
      out += "accepted\n";
    } else {
      out += "rejected ";
      out += to_string(row.reason);
      if (!row.detail.empty()) out += " (" + row.detail + ")";
      out += '\n';
    }
  }
  out += std::to_string(report.accepted_count()) + " accepted, " +
         std::to_string(report.rejected_count()) + " rejected\n";
  return out;
}

}  // namespace qprice
