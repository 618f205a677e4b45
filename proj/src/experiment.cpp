#include "qprice/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qprice/text.hpp"

namespace qprice {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr MethodResult kMissing{kNaN, kNaN, kNaN};

MethodResult from_optimum(const Optimum& o) { return {o.price, o.demand, o.profit}; }

ProductSpec with_policy_cost(ProductSpec spec, const CostPolicy& policy) {
  spec.unit_cost = policy.unit_cost_for(spec);
  return spec;
}

std::array<ComparisonRow, 2> failed_rows(const ProductSpec& spec, const std::string& message) {
  std::array<ComparisonRow, 2> rows;
  for (DayType type : kDayTypes) {
    auto& row = rows[static_cast<std::size_t>(type)];
    row.product_name = spec.name;
    row.day_type = type;
    row.unit_cost = kNaN;
    row.rl = row.analytic = row.grid_search = row.line_search = kMissing;
    row.rl_vs_best_profit_ratio = kNaN;
    row.error = message;
  }
  return rows;
}

std::array<ComparisonRow, 2> process_product(const ProductSpec& raw, std::size_t index,
                                             const ExperimentConfig& config, bool with_rl) {
  try {
    const ProductSpec spec = with_policy_cost(raw, config.cost_policy);
    validate(spec);
    const PriceGrid grid =
        ratio_price_grid(spec, config.grid_lo_ratio, config.grid_hi_ratio, config.grid_points);
    const PriceBounds bounds{grid.front(), grid.back()};

    std::array<GreedyDecision, 2> greedy{};
    if (with_rl) {
      Hyperparams hp = config.hyperparams;
      hp.seed = product_seed(config, index);
      TrainOptions options;
      options.demand_noise_sd = config.demand_noise_sd;
      const TrainResult trained = train(spec, grid, config.modulation, hp, options);
      greedy = evaluate_greedy(trained.table, spec, grid, config.modulation);
    }

    std::array<ComparisonRow, 2> rows;
    for (DayType type : kDayTypes) {
      const double m = config.modulation.multiplier(type);
      const Optimum analytic = analytic_optimum(spec, bounds, m);
      const Optimum grid_best = grid_search_optimum(spec, grid, m);
      const Optimum line = line_search_optimum(spec, bounds, m, config.line_search_tolerance);

      auto& row = rows[static_cast<std::size_t>(type)];
      row.product_name = spec.name;
      row.day_type = type;
      row.unit_cost = spec.unit_cost;
      row.analytic = from_optimum(analytic);
      row.grid_search = from_optimum(grid_best);
      row.line_search = from_optimum(line);
      row.analytic_clamped = analytic.clamped;
      row.line_search_clamped = line.clamped;
      if (with_rl) {
        const auto& g = greedy[static_cast<std::size_t>(type)];
        row.rl = {g.price, g.demand, g.profit};
        const double best = std::max({analytic.profit, grid_best.profit, line.profit});
        row.rl_vs_best_profit_ratio = best > 0.0 ? g.profit / best : kNaN;
      } else {
        row.rl = kMissing;
        row.rl_vs_best_profit_ratio = kNaN;
      }
    }
    return rows;
  } catch (const std::exception& e) {
    return failed_rows(raw, e.what());
  }
}

std::vector<ComparisonRow> run_all(const std::vector<ProductSpec>& catalog,
                                   const ExperimentConfig& config, bool with_rl) {
  if (catalog.empty()) throw std::invalid_argument("catalog is empty");
  validate(config);

  std::vector<std::array<ComparisonRow, 2>> results(catalog.size());
  std::size_t jobs = config.jobs;
  if (jobs == 0) jobs = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  jobs = std::min(jobs, catalog.size());

  if (jobs <= 1) {
    for (std::size_t i = 0; i < catalog.size(); ++i)
      results[i] = process_product(catalog[i], i, config, with_rl);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < catalog.size(); i = next++)
          results[i] = process_product(catalog[i], i, config, with_rl);
      });
    }
  }

  std::vector<ComparisonRow> rows;
  rows.reserve(catalog.size() * 2);
  for (auto& pair : results)
    for (auto& row : pair) rows.push_back(std::move(row));
  return rows;
}

// --- config JSON -----------------------------------------------------------

double number_field(const ordered_json& v, const std::string& key) {
  if (!v.is_number()) throw ParseError(key, "expected a number");
  return v.get<double>();
}

std::uint64_t count_field(const ordered_json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  throw ParseError(key, "expected a non-negative integer");
}

ordered_json config_object(const ExperimentConfig& c) {
  ordered_json j;
  j["alpha"] = c.hyperparams.alpha;
  j["gamma"] = c.hyperparams.gamma;
  j["epsilon_start"] = c.hyperparams.epsilon_start;
  j["epsilon_min"] = c.hyperparams.epsilon_min;
  j["epsilon_decay"] = c.hyperparams.epsilon_decay;
  j["episodes"] = c.hyperparams.episodes;
  j["steps_per_episode"] = c.hyperparams.steps_per_episode;
  j["grid_points"] = c.grid_points;
  j["grid_span"] = {c.grid_lo_ratio, c.grid_hi_ratio};
  j["weekday_multiplier"] = c.modulation.weekday_multiplier;
  j["weekend_multiplier"] = c.modulation.weekend_multiplier;
  j["cost_policy"] = std::string(to_string(c.cost_policy.kind));
  j["cost_fraction"] = c.cost_policy.fraction;
  j["master_seed"] = c.master_seed;
  j["line_search_tolerance"] = c.line_search_tolerance;
  j["demand_noise_sd"] = c.demand_noise_sd;
  return j;
}

// --- report helpers ----------------------------------------------------------

std::string cell(double v, int decimals) { return std::isnan(v) ? "" : format_fixed(v, decimals); }

ordered_json method_json(const MethodResult& m) {
  return {{"price", m.price}, {"demand", m.demand}, {"profit", m.profit}};
}

double json_number(const nlohmann::json& v) {
  return v.is_null() ? kNaN : v.get<double>();
}

MethodResult method_from_json(const nlohmann::json& j) {
  return {json_number(j.at("price")), json_number(j.at("demand")), json_number(j.at("profit"))};
}

std::string md_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string cost_sentence(const ExperimentConfig& config) {
  switch (config.cost_policy.kind) {
    case CostPolicyKind::ZeroCost: return "Unit costs: zero for every product.";
    case CostPolicyKind::FromCatalog: return "Unit costs: taken from the catalog (0 where absent).";
    case CostPolicyKind::FractionOfBasePrice:
      return "Unit costs: " + format_fixed(config.cost_policy.fraction * 100.0, 1) +
             "% of each product's base price.";
  }
  return {};
}

std::string render_csv(const std::vector<ComparisonRow>& rows, bool include_rl) {
  std::string out = "product,day,unit_cost";
  if (include_rl) out += ",rl_optimal_price,rl_optimal_demand,rl_profit";
  out +=
      ",analytic_optimal_price,analytic_optimal_demand,analytic_profit,analytic_clamped"
      ",grid_optimal_price,grid_optimal_demand,grid_profit"
      ",line_optimal_price,line_optimal_demand,line_profit,line_clamped";
  if (include_rl) out += ",rl_vs_best_profit_ratio";
  out += ",error\n";

  const auto method = [](const MethodResult& m) {
    return "," + cell(m.price, 1) + "," + cell(m.demand, 1) + "," + cell(m.profit, 2);
  };
  for (const auto& r : rows) {
    out += csv_field(r.product_name) + "," + std::string(to_string(r.day_type)) + "," +
           cell(r.unit_cost, 2);
    if (include_rl) out += method(r.rl);
    out += method(r.analytic) + "," + (r.analytic_clamped ? "true" : "false");
    out += method(r.grid_search);
    out += method(r.line_search) + "," + (r.line_search_clamped ? "true" : "false");
    if (include_rl) out += "," + cell(r.rl_vs_best_profit_ratio, 4);
    out += "," + csv_field(r.error.value_or(""));
    out += '\n';
  }
  return out;
}

std::string render_markdown(const std::vector<ComparisonRow>& rows, const ExperimentConfig& config,
                            bool include_rl) {
  const auto& hp = config.hyperparams;
  std::string out = "# Pricing comparison\n\n";
  out += cost_sentence(config) + "\n";
  out += "Price grid: " + std::to_string(config.grid_points) + " prices over [" +
         format_number(config.grid_lo_ratio) + ", " + format_number(config.grid_hi_ratio) +
         "] x base price. Day multipliers: weekday " +
         format_number(config.modulation.weekday_multiplier) + ", weekend " +
         format_number(config.modulation.weekend_multiplier) + ".\n";
  if (include_rl)
    out += "Q-learning: alpha " + format_number(hp.alpha) + ", gamma " + format_number(hp.gamma) +
           ", " + std::to_string(hp.episodes) + " episodes x " +
           std::to_string(hp.steps_per_episode) + " steps, master seed " +
           std::to_string(config.master_seed) + ".\n";

  bool any_clamped = false;
  bool any_error = false;
  const auto table = [&](const std::string& title, auto method_of, auto clamped_of) {
    out += "\n## " + title + "\n\n";
    out += "| Product Name | Day | Optimal Price | Optimal Demand | Profit |\n";
    out += "|---|---|---:|---:|---:|\n";
    for (const auto& r : rows) {
      const MethodResult& m = method_of(r);
      std::string price = cell(m.price, 1);
      if (clamped_of(r)) {
        price += "[^clamped]";
        any_clamped = true;
      }
      if (r.error) any_error = true;
      out += "| " + md_escape(r.product_name) + " | " + std::string(to_string(r.day_type)) + " | " +
             price + " | " + cell(m.demand, 1) + " | " + cell(m.profit, 2) + " |\n";
    }
  };
  const auto never = [](const ComparisonRow&) { return false; };

  if (include_rl)
    table("Q-Learning (greedy policy)", [](const ComparisonRow& r) -> const MethodResult& { return r.rl; }, never);
  table("Analytic optimum", [](const ComparisonRow& r) -> const MethodResult& { return r.analytic; },
        [](const ComparisonRow& r) { return r.analytic_clamped; });
  table("Grid search", [](const ComparisonRow& r) -> const MethodResult& { return r.grid_search; }, never);
  table("Golden-section line search",
        [](const ComparisonRow& r) -> const MethodResult& { return r.line_search; },
        [](const ComparisonRow& r) { return r.line_search_clamped; });

  if (include_rl) {
    out += "\n## Q-Learning vs best baseline\n\n";
    out += "| Product Name | Day | RL Profit | Best Baseline Profit | Ratio |\n";
    out += "|---|---|---:|---:|---:|\n";
    for (const auto& r : rows) {
      const double best = std::max({r.analytic.profit, r.grid_search.profit, r.line_search.profit});
      out += "| " + md_escape(r.product_name) + " | " + std::string(to_string(r.day_type)) + " | " +
             cell(r.rl.profit, 2) + " | " + cell(best, 2) + " | " +
             cell(r.rl_vs_best_profit_ratio, 4) + " |\n";
    }
  }

  if (any_error) {
    out += "\n## Failed products\n\n";
    for (std::size_t i = 0; i < rows.size(); i += 2)
      if (rows[i].error) out += "- " + md_escape(rows[i].product_name) + ": " + *rows[i].error + "\n";
  }
  if (any_clamped)
    out += "\n[^clamped]: The unconstrained optimum lies outside the search interval [" +
           format_number(config.grid_lo_ratio) + ", " + format_number(config.grid_hi_ratio) +
           "] x base price; the reported price sits on the interval boundary.\n";
  return out;
}

std::string render_json(const std::vector<ComparisonRow>& rows, const ExperimentConfig& config,
                        bool include_rl) {
  ordered_json j;
  j["provenance"] = {{"library", std::string(library_version())},
                     {"rng", "xoshiro256**"},
                     {"seed_splitting", "splitmix64_mix(master_seed + (index + 1) * 0x9E3779B97F4A7C15)"},
                     {"includes_rl", include_rl},
                     {"config", config_object(config)}};
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row;
    row["product"] = r.product_name;
    row["day"] = std::string(to_string(r.day_type));
    row["unit_cost"] = r.unit_cost;
    if (include_rl) row["rl"] = method_json(r.rl);
    row["analytic"] = method_json(r.analytic);
    row["grid_search"] = method_json(r.grid_search);
    row["line_search"] = method_json(r.line_search);
    row["analytic_clamped"] = r.analytic_clamped;
    row["line_search_clamped"] = r.line_search_clamped;
    if (include_rl) row["rl_vs_best_profit_ratio"] = r.rl_vs_best_profit_ratio;
    row["error"] = r.error ? ordered_json(*r.error) : ordered_json(nullptr);
    arr.push_back(std::move(row));
  }
  j["rows"] = std::move(arr);
  return j.dump(2) + "\n";
}

}  // namespace

double CostPolicy::unit_cost_for(const ProductSpec& spec) const noexcept {
  switch (kind) {
    case CostPolicyKind::FromCatalog: return spec.unit_cost;
    case CostPolicyKind::ZeroCost: return 0.0;
    case CostPolicyKind::FractionOfBasePrice: return fraction * spec.base_price;
  }
  return spec.unit_cost;
}

std::string_view to_string(CostPolicyKind kind) noexcept {
  switch (kind) {
    case CostPolicyKind::FromCatalog: return "catalog";
    case CostPolicyKind::ZeroCost: return "zero";
    case CostPolicyKind::FractionOfBasePrice: return "fraction";
  }
  return "?";
}

CostPolicyKind parse_cost_policy(std::string_view text) {
  if (text == "catalog") return CostPolicyKind::FromCatalog;
  if (text == "zero") return CostPolicyKind::ZeroCost;
  if (text == "fraction") return CostPolicyKind::FractionOfBasePrice;
  throw std::invalid_argument("unknown cost policy '" + std::string(text) +
                              "' (expected catalog, zero or fraction)");
}

void validate(const ExperimentConfig& config) {
  validate(config.hyperparams);
  validate(config.modulation);
  if (config.grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
  if (!(config.grid_lo_ratio > 0.0) || !(config.grid_lo_ratio < config.grid_hi_ratio) ||
      !std::isfinite(config.grid_hi_ratio))
    throw std::invalid_argument("grid_span needs 0 < lo_ratio < hi_ratio");
  if (!(config.cost_policy.fraction >= 0.0 && config.cost_policy.fraction < 1.0))
    throw std::invalid_argument("cost_fraction must be in [0, 1)");
  if (!(config.line_search_tolerance > 0.0))
    throw std::invalid_argument("line_search_tolerance must be > 0");
  if (!(config.demand_noise_sd >= 0.0) || !std::isfinite(config.demand_noise_sd))
    throw std::invalid_argument("demand_noise_sd must be >= 0");
}

ExperimentConfig config_from_json(std::string_view json, ExperimentConfig base) {
  ordered_json j;
  try {
    j = ordered_json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config", "expected a JSON object");

  ExperimentConfig c = base;
  for (const auto& [key, v] : j.items()) {
    if (key == "alpha") c.hyperparams.alpha = number_field(v, key);
    else if (key == "gamma") c.hyperparams.gamma = number_field(v, key);
    else if (key == "epsilon_start") c.hyperparams.epsilon_start = number_field(v, key);
    else if (key == "epsilon_min") c.hyperparams.epsilon_min = number_field(v, key);
    else if (key == "epsilon_decay") c.hyperparams.epsilon_decay = number_field(v, key);
    else if (key == "episodes") c.hyperparams.episodes = count_field(v, key);
    else if (key == "steps_per_episode") c.hyperparams.steps_per_episode = count_field(v, key);
    else if (key == "grid_points") c.grid_points = count_field(v, key);
    else if (key == "grid_span") {
      if (!v.is_array() || v.size() != 2) throw ParseError(key, "expected [lo_ratio, hi_ratio]");
      c.grid_lo_ratio = number_field(v[0], key);
      c.grid_hi_ratio = number_field(v[1], key);
    } else if (key == "weekday_multiplier") c.modulation.weekday_multiplier = number_field(v, key);
    else if (key == "weekend_multiplier") c.modulation.weekend_multiplier = number_field(v, key);
    else if (key == "cost_policy") {
      if (!v.is_string()) throw ParseError(key, "expected \"catalog\", \"zero\" or \"fraction\"");
      try {
        c.cost_policy.kind = parse_cost_policy(v.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ParseError(key, e.what());
      }
    } else if (key == "cost_fraction") c.cost_policy.fraction = number_field(v, key);
    else if (key == "master_seed") c.master_seed = count_field(v, key);
    else if (key == "line_search_tolerance") c.line_search_tolerance = number_field(v, key);
    else if (key == "demand_noise_sd") c.demand_noise_sd = number_field(v, key);
    else if (key == "jobs") c.jobs = count_field(v, key);
    else throw ParseError(key, "unknown config key");
  }
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    // Validation messages lead with the field name.
    const std::string what = e.what();
    const auto space = what.find(' ');
    if (space == std::string::npos) throw ParseError("config", what);
    throw ParseError(what.substr(0, space), what.substr(space + 1));
  }
  return c;
}

std::string config_to_json(const ExperimentConfig& config) {
  ordered_json j = config_object(config);
  j["jobs"] = config.jobs;
  return j.dump(2) + "\n";
}

std::vector<ComparisonRow> run_experiment(const std::vector<ProductSpec>& catalog,
                                          const ExperimentConfig& config) {
  return run_all(catalog, config, true);
}

std::vector<ComparisonRow> run_baselines(const std::vector<ProductSpec>& catalog,
                                         const ExperimentConfig& config) {
  return run_all(catalog, config, false);
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  if (text == "markdown" || text == "md") return ReportFormat::Markdown;
  throw std::invalid_argument("unknown report format '" + std::string(text) +
                              "' (expected csv, json or markdown)");
}

std::string render_report(const std::vector<ComparisonRow>& rows, ReportFormat format,
                          const ExperimentConfig& config, bool include_rl) {
  switch (format) {
    case ReportFormat::Csv: return render_csv(rows, include_rl);
    case ReportFormat::Json: return render_json(rows, config, include_rl);
    case ReportFormat::Markdown: return render_markdown(rows, config, include_rl);
  }
  return {};
}

std::vector<ComparisonRow> rows_from_json(std::string_view json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("report", e.what());
  }
  std::vector<ComparisonRow> rows;
  try {
    for (const auto& r : j.at("rows")) {
      ComparisonRow row;
      row.product_name = r.at("product").get<std::string>();
      row.day_type = parse_day_type(r.at("day").get<std::string>());
      row.unit_cost = json_number(r.at("unit_cost"));
      row.rl = r.contains("rl") ? method_from_json(r.at("rl")) : kMissing;
      row.analytic = method_from_json(r.at("analytic"));
      row.grid_search = method_from_json(r.at("grid_search"));
      row.line_search = method_from_json(r.at("line_search"));
      row.analytic_clamped = r.at("analytic_clamped").get<bool>();
      row.line_search_clamped = r.at("line_search_clamped").get<bool>();
      row.rl_vs_best_profit_ratio =
          r.contains("rl_vs_best_profit_ratio") ? json_number(r.at("rl_vs_best_profit_ratio")) : kNaN;
      if (r.contains("error") && !r.at("error").is_null()) row.error = r.at("error").get<std::string>();
      rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("report", e.what());
  }
  return rows;
}

std::string export_revenue_curves(const std::vector<ProductSpec>& catalog,
                                  const ExperimentConfig& config, std::size_t samples_per_curve) {
  validate(config);
  if (samples_per_curve < 2) throw std::invalid_argument("samples_per_curve must be >= 2");
  std::string out = "product,day,price,demand,revenue,profit\n";
  for (const auto& raw : catalog) {
    const ProductSpec spec = with_policy_cost(raw, config.cost_policy);
    validate(spec);
    const PriceGrid samples =
        ratio_price_grid(spec, config.grid_lo_ratio, config.grid_hi_ratio, samples_per_curve);
    for (DayType type : kDayTypes) {
      const std::string prefix = csv_field(spec.name) + "," + std::string(to_string(type)) + ",";
      for (const auto& pt : revenue_curve(spec, samples, config.modulation.multiplier(type))) {
        out += prefix + format_number(pt.price) + "," + format_number(pt.demand) + "," +
               format_number(pt.revenue) + "," + format_number(reward(spec, pt.price, pt.demand)) +
               "\n";
      }
    }
  }
  return out;
}

std::string_view library_version() noexcept { return "0.1.0"; }

}  // namespace qprice
