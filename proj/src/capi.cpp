#include "qprice/qprice.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "qprice/catalog.hpp"
#include "qprice/experiment.hpp"
#include "qprice/text.hpp"

struct qp_catalog {
  qprice::ParsedCatalog parsed;
};

struct qp_config {
  qprice::ExperimentConfig config;
};

struct qp_qtable {
  qprice::QTable table;
  qprice::PriceGrid grid;
  qprice::TrainingProvenance provenance;
};

namespace {

thread_local std::string tl_error;

void set_error(std::string message) { tl_error = std::move(message); }

// Runs `body`, translating exceptions into status codes.
template <class F>
qp_status guarded(F&& body) noexcept {
  try {
    tl_error.clear();
    return body();
  } catch (const qprice::ParseError& e) {
    set_error(e.what());
    return QP_ERR_PARSE;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return QP_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    set_error(e.what());
    return QP_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return QP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return QP_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return QP_ERR_INTERNAL;
  }
}

qp_status null_arg(const char* name) {
  set_error(std::string("null pointer: ") + name);
  return QP_ERR_NULL_ARG;
}

#define QP_REQUIRE(ptr) \
  do {                  \
    if (!(ptr)) return null_arg(#ptr); \
  } while (0)

char* copy_out(const std::string& text) {
  char* buf = static_cast<char*>(std::malloc(text.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, text.data(), text.size());
  buf[text.size()] = '\0';
  return buf;
}

qprice::ReportFormat to_format(qp_format format) {
  switch (format) {
    case QP_FORMAT_CSV: return qprice::ReportFormat::Csv;
    case QP_FORMAT_JSON: return qprice::ReportFormat::Json;
    case QP_FORMAT_MARKDOWN: return qprice::ReportFormat::Markdown;
  }
  throw std::invalid_argument("unknown report format " + std::to_string(static_cast<int>(format)));
}

double* number_slot(qprice::ExperimentConfig& c, std::string_view key) {
  if (key == "alpha") return &c.hyperparams.alpha;
  if (key == "gamma") return &c.hyperparams.gamma;
  if (key == "epsilon_start") return &c.hyperparams.epsilon_start;
  if (key == "epsilon_min") return &c.hyperparams.epsilon_min;
  if (key == "epsilon_decay") return &c.hyperparams.epsilon_decay;
  if (key == "grid_lo_ratio") return &c.grid_lo_ratio;
  if (key == "grid_hi_ratio") return &c.grid_hi_ratio;
  if (key == "weekday_multiplier") return &c.modulation.weekday_multiplier;
  if (key == "weekend_multiplier") return &c.modulation.weekend_multiplier;
  if (key == "cost_fraction") return &c.cost_policy.fraction;
  if (key == "line_search_tolerance") return &c.line_search_tolerance;
  if (key == "demand_noise_sd") return &c.demand_noise_sd;
  return nullptr;
}

std::uint64_t* episode_slot(qprice::ExperimentConfig& c, std::string_view key) {
  if (key == "episodes") return &c.hyperparams.episodes;
  if (key == "steps_per_episode") return &c.hyperparams.steps_per_episode;
  return nullptr;
}

std::size_t* size_slot(qprice::ExperimentConfig& c, std::string_view key) {
  if (key == "grid_points") return &c.grid_points;
  if (key == "jobs") return &c.jobs;
  return nullptr;
}

std::uint64_t to_count(const char* key, double value) {
  if (!(value >= 0.0) || value != static_cast<double>(static_cast<std::uint64_t>(value)))
    throw std::invalid_argument(std::string(key) + " must be a non-negative integer");
  return static_cast<std::uint64_t>(value);
}

}  // namespace

extern "C" {

const char* qp_version(void) { return qprice::library_version().data(); }

const char* qp_last_error(void) { return tl_error.c_str(); }

void qp_clear_last_error(void) { tl_error.clear(); }

void qp_string_free(char* text) { std::free(text); }

double qp_demand(double base_demand, double base_price, double elasticity, double price,
                 double multiplier) {
  qprice::ProductSpec spec{"", base_demand, base_price, elasticity, 0.0};
  return qprice::demand(spec, price, multiplier);
}

double qp_reward(double unit_cost, double price, double units) {
  qprice::ProductSpec spec{"", 0.0, 1.0, -1.0, unit_cost};
  return qprice::reward(spec, price, units);
}

qp_status qp_catalog_parse(const char* csv, size_t length, qp_catalog** out) {
  QP_REQUIRE(out);
  *out = nullptr;
  if (length > 0) QP_REQUIRE(csv);
  return guarded([&] {
    auto parsed = qprice::parse_catalog(std::string_view(csv ? csv : "", length));
    *out = new qp_catalog{std::move(parsed)};
    return QP_OK;
  });
}

qp_status qp_catalog_sample(qp_catalog** out) {
  QP_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto* cat = new qp_catalog{};
    cat->parsed.products = qprice::sample_catalog();
    for (std::size_t i = 0; i < cat->parsed.products.size(); ++i)
      cat->parsed.report.rows.push_back({i + 2, true, qprice::RejectReason::MalformedField, {}});
    *out = cat;
    return QP_OK;
  });
}

void qp_catalog_free(qp_catalog* catalog) { delete catalog; }

size_t qp_catalog_size(const qp_catalog* catalog) {
  return catalog ? catalog->parsed.products.size() : 0;
}

size_t qp_catalog_rejected_count(const qp_catalog* catalog) {
  return catalog ? catalog->parsed.report.rejected_count() : 0;
}

qp_status qp_catalog_product(const qp_catalog* catalog, size_t index, double* base_demand,
                             double* base_price, double* elasticity, double* unit_cost) {
  QP_REQUIRE(catalog);
  if (index >= catalog->parsed.products.size()) {
    set_error("product index " + std::to_string(index) + " out of range");
    return QP_ERR_INVALID_ARGUMENT;
  }
  const auto& p = catalog->parsed.products[index];
  if (base_demand) *base_demand = p.base_demand;
  if (base_price) *base_price = p.base_price;
  if (elasticity) *elasticity = p.elasticity;
  if (unit_cost) *unit_cost = p.unit_cost;
  return QP_OK;
}

const char* qp_catalog_product_name(const qp_catalog* catalog, size_t index) {
  if (!catalog || index >= catalog->parsed.products.size()) return nullptr;
  return catalog->parsed.products[index].name.c_str();
}

qp_status qp_catalog_to_csv(const qp_catalog* catalog, char** out) {
  QP_REQUIRE(catalog);
  QP_REQUIRE(out);
  return guarded([&] {
    *out = copy_out(qprice::serialize_catalog(catalog->parsed.products));
    return QP_OK;
  });
}

qp_status qp_catalog_validation_report(const qp_catalog* catalog, char** out) {
  QP_REQUIRE(catalog);
  QP_REQUIRE(out);
  return guarded([&] {
    *out = copy_out(qprice::render_validation_report(catalog->parsed.report));
    return QP_OK;
  });
}

qp_status qp_config_new(qp_config** out) {
  QP_REQUIRE(out);
  return guarded([&] {
    *out = new qp_config{};
    return QP_OK;
  });
}

void qp_config_free(qp_config* config) { delete config; }

qp_status qp_config_load_json(qp_config* config, const char* json, size_t length) {
  QP_REQUIRE(config);
  QP_REQUIRE(json);
  return guarded([&] {
    config->config = qprice::config_from_json(std::string_view(json, length), config->config);
    return QP_OK;
  });
}

qp_status qp_config_to_json(const qp_config* config, char** out) {
  QP_REQUIRE(config);
  QP_REQUIRE(out);
  return guarded([&] {
    *out = copy_out(qprice::config_to_json(config->config));
    return QP_OK;
  });
}

qp_status qp_config_set_number(qp_config* config, const char* key, double value) {
  QP_REQUIRE(config);
  QP_REQUIRE(key);
  return guarded([&] {
    qprice::ExperimentConfig next = config->config;
    if (double* slot = number_slot(next, key)) {
      *slot = value;
    } else if (auto* slot64 = episode_slot(next, key)) {
      *slot64 = to_count(key, value);
    } else if (auto* slot_size = size_slot(next, key)) {
      *slot_size = static_cast<std::size_t>(to_count(key, value));
    } else {
      throw std::invalid_argument(std::string("unknown config key '") + key + "'");
    }
    qprice::validate(next);
    config->config = next;
    return QP_OK;
  });
}

qp_status qp_config_get_number(const qp_config* config, const char* key, double* value) {
  QP_REQUIRE(config);
  QP_REQUIRE(key);
  QP_REQUIRE(value);
  return guarded([&] {
    auto& c = const_cast<qprice::ExperimentConfig&>(config->config);
    if (double* slot = number_slot(c, key)) *value = *slot;
    else if (auto* slot64 = episode_slot(c, key)) *value = static_cast<double>(*slot64);
    else if (auto* slot_size = size_slot(c, key)) *value = static_cast<double>(*slot_size);
    else throw std::invalid_argument(std::string("unknown config key '") + key + "'");
    return QP_OK;
  });
}

qp_status qp_config_set_seed(qp_config* config, uint64_t master_seed) {
  QP_REQUIRE(config);
  config->config.master_seed = master_seed;
  return QP_OK;
}

qp_status qp_config_set_cost_policy(qp_config* config, qp_cost_policy policy, double fraction) {
  QP_REQUIRE(config);
  return guarded([&] {
    qprice::ExperimentConfig next = config->config;
    switch (policy) {
      case QP_COST_FROM_CATALOG: next.cost_policy.kind = qprice::CostPolicyKind::FromCatalog; break;
      case QP_COST_ZERO: next.cost_policy.kind = qprice::CostPolicyKind::ZeroCost; break;
      case QP_COST_FRACTION_OF_BASE_PRICE:
        next.cost_policy.kind = qprice::CostPolicyKind::FractionOfBasePrice;
        break;
      default: throw std::invalid_argument("unknown cost policy");
    }
    next.cost_policy.fraction = fraction;
    qprice::validate(next);
    config->config = next;
    return QP_OK;
  });
}

qp_status qp_compare(const qp_catalog* catalog, const qp_config* config, qp_format format,
                     char** out) {
  QP_REQUIRE(catalog);
  QP_REQUIRE(config);
  QP_REQUIRE(out);
  return guarded([&] {
    const auto rows = qprice::run_experiment(catalog->parsed.products, config->config);
    *out = copy_out(qprice::render_report(rows, to_format(format), config->config, true));
    return QP_OK;
  });
}

qp_status qp_optimize(const qp_catalog* catalog, const qp_config* config, qp_format format,
                      char** out) {
  QP_REQUIRE(catalog);
  QP_REQUIRE(config);
  QP_REQUIRE(out);
  return guarded([&] {
    const auto rows = qprice::run_baselines(catalog->parsed.products, config->config);
    *out = copy_out(qprice::render_report(rows, to_format(format), config->config, false));
    return QP_OK;
  });
}

qp_status qp_revenue_curves(const qp_catalog* catalog, const qp_config* config,
                            size_t samples_per_curve, char** out) {
  QP_REQUIRE(catalog);
  QP_REQUIRE(config);
  QP_REQUIRE(out);
  return guarded([&] {
    *out = copy_out(
        qprice::export_revenue_curves(catalog->parsed.products, config->config, samples_per_curve));
    return QP_OK;
  });
}

qp_status qp_train_product(const qp_catalog* catalog, const qp_config* config,
                           const char* product_name, qp_qtable** out) {
  QP_REQUIRE(catalog);
  QP_REQUIRE(config);
  QP_REQUIRE(product_name);
  QP_REQUIRE(out);
  *out = nullptr;
  const auto& products = catalog->parsed.products;
  std::size_t index = products.size();
  for (std::size_t i = 0; i < products.size(); ++i)
    if (products[i].name == product_name) {
      index = i;
      break;
    }
  if (index == products.size()) {
    set_error(std::string("no product named '") + product_name + "' in the catalog");
    return QP_ERR_NOT_FOUND;
  }
  return guarded([&] {
    const auto& c = config->config;
    qprice::validate(c);
    qprice::ProductSpec spec = products[index];
    spec.unit_cost = c.cost_policy.unit_cost_for(spec);
    qprice::Hyperparams hp = c.hyperparams;
    hp.seed = qprice::product_seed(c, index);
    auto grid = qprice::ratio_price_grid(spec, c.grid_lo_ratio, c.grid_hi_ratio, c.grid_points);
    qprice::TrainOptions options;
    options.demand_noise_sd = c.demand_noise_sd;
    auto trained = qprice::train(spec, grid, c.modulation, hp, options);
    qprice::TrainingProvenance prov{hp, spec, c.modulation,
                                    std::vector<double>(grid.prices().begin(), grid.prices().end())};
    *out = new qp_qtable{std::move(trained.table), std::move(grid), std::move(prov)};
    return QP_OK;
  });
}

void qp_qtable_free(qp_qtable* table) { delete table; }

size_t qp_qtable_state_count(const qp_qtable* table) { return table ? table->table.state_count() : 0; }

size_t qp_qtable_action_count(const qp_qtable* table) {
  return table ? table->table.action_count() : 0;
}

qp_status qp_qtable_value(const qp_qtable* table, size_t state, size_t action, double* value) {
  QP_REQUIRE(table);
  QP_REQUIRE(value);
  return guarded([&] {
    *value = table->table.at(state, action);
    return QP_OK;
  });
}

qp_status qp_qtable_greedy_price(const qp_qtable* table, qp_day_type day, double* price) {
  QP_REQUIRE(table);
  QP_REQUIRE(price);
  return guarded([&] {
    if (day != QP_WEEKDAY && day != QP_WEEKEND) throw std::invalid_argument("unknown day type");
    const auto decisions = qprice::evaluate_greedy(table->table, table->provenance.product,
                                                   table->grid, table->provenance.modulation);
    *price = decisions[static_cast<std::size_t>(day)].price;
    return QP_OK;
  });
}

qp_status qp_qtable_to_csv(const qp_qtable* table, char** out) {
  QP_REQUIRE(table);
  QP_REQUIRE(out);
  return guarded([&] {
    *out = copy_out(qprice::qtable_to_csv(table->table, table->grid));
    return QP_OK;
  });
}

qp_status qp_qtable_provenance_json(const qp_qtable* table, char** out) {
  QP_REQUIRE(table);
  QP_REQUIRE(out);
  return guarded([&] {
    *out = copy_out(qprice::provenance_to_json(table->provenance));
    return QP_OK;
  });
}

}  // extern "C"
