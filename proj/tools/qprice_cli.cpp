// qprice command-line front end. Talks to the library only through qprice.h.
//
// Exit codes: 0 success, 1 validation rejections (validate), 2 usage or input
// errors, 3 unexpected library failures.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qprice/qprice.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct CatalogDeleter {
  void operator()(qp_catalog* c) const { qp_catalog_free(c); }
};
struct ConfigDeleter {
  void operator()(qp_config* c) const { qp_config_free(c); }
};
struct QTableDeleter {
  void operator()(qp_qtable* t) const { qp_qtable_free(t); }
};
struct StringDeleter {
  void operator()(char* s) const { qp_string_free(s); }
};
using CatalogPtr = std::unique_ptr<qp_catalog, CatalogDeleter>;
using ConfigPtr = std::unique_ptr<qp_config, ConfigDeleter>;
using QTablePtr = std::unique_ptr<qp_qtable, QTableDeleter>;
using OwnedText = std::unique_ptr<char, StringDeleter>;

// Carries an exit code out of nested helpers.
struct Failure {
  int code;
  std::string message;
};

void check(qp_status status, const std::string& context) {
  if (status == QP_OK) return;
  const int code = status == QP_ERR_INTERNAL ? kExitInternal : kExitUsage;
  throw Failure{code, context + ": " + qp_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitUsage, "cannot read file '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitUsage, "cannot write file '" + path + "'"};
  out << text;
  if (!out) throw Failure{kExitUsage, "failed writing '" + path + "'"};
}

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> episodes;
  std::optional<double> alpha;
  std::optional<double> gamma;
  std::optional<double> epsilon;
  std::optional<double> epsilon_min;
  std::optional<double> epsilon_decay;
  std::optional<std::uint64_t> grid_points;
  std::optional<double> grid_lo;
  std::optional<double> grid_hi;
  std::optional<std::string> cost_policy;
  std::optional<double> cost_fraction;
  std::optional<double> weekday_multiplier;
  std::optional<double> weekend_multiplier;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> jobs;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "Flat JSON config file (flags override it)");
  cmd->add_option("--seed", o.seed, "Master seed (default 0)");
  cmd->add_option("--episodes", o.episodes, "Training episodes per product");
  cmd->add_option("--alpha", o.alpha, "Learning rate in (0, 1]");
  cmd->add_option("--gamma", o.gamma, "Discount factor in [0, 1)");
  cmd->add_option("--epsilon", o.epsilon, "Initial exploration rate in [0, 1]");
  cmd->add_option("--epsilon-min", o.epsilon_min, "Exploration floor");
  cmd->add_option("--epsilon-decay", o.epsilon_decay, "Per-episode exploration decay in (0, 1]");
  cmd->add_option("--grid-points", o.grid_points, "Number of candidate prices (>= 2)");
  cmd->add_option("--grid-lo", o.grid_lo, "Lowest price as a multiple of the base price");
  cmd->add_option("--grid-hi", o.grid_hi, "Highest price as a multiple of the base price");
  cmd->add_option("--cost-policy", o.cost_policy, "Unit costs: catalog, zero or fraction")
      ->check(CLI::IsMember({"catalog", "zero", "fraction"}));
  cmd->add_option("--cost-fraction", o.cost_fraction,
                  "Unit cost as a fraction of base price (with --cost-policy fraction)");
  cmd->add_option("--weekday-multiplier", o.weekday_multiplier, "Weekday demand multiplier");
  cmd->add_option("--weekend-multiplier", o.weekend_multiplier, "Weekend demand multiplier");
  cmd->add_option("--tolerance", o.tolerance, "Golden-section search tolerance (currency)");
  cmd->add_option("--jobs", o.jobs, "Worker threads (0 = one per product, capped at hardware)");
}

ConfigPtr build_config(const Overrides& o) {
  qp_config* raw = nullptr;
  check(qp_config_new(&raw), "config");
  ConfigPtr config(raw);
  check(qp_config_set_number(config.get(), "jobs", 0), "config");

  if (!o.config_path.empty()) {
    const std::string json = read_file(o.config_path);
    check(qp_config_load_json(config.get(), json.data(), json.size()),
          "config '" + o.config_path + "'");
  }

  const auto set = [&](const char* key, const auto& value) {
    if (value) check(qp_config_set_number(config.get(), key, static_cast<double>(*value)), key);
  };
  // Paired bounds are validated against each other on every set, so apply
  // them in whichever order keeps the config valid in between.
  const auto set_pair = [&](const char* lo_key, const std::optional<double>& lo, const char* hi_key,
                            const std::optional<double>& hi) {
    if (lo && hi && qp_config_set_number(config.get(), lo_key, *lo) != QP_OK) {
      set(hi_key, hi);
      set(lo_key, lo);
      return;
    }
    set(lo_key, lo);
    set(hi_key, hi);
  };
  set_pair("epsilon_min", o.epsilon_min, "epsilon_start", o.epsilon);
  set_pair("grid_lo_ratio", o.grid_lo, "grid_hi_ratio", o.grid_hi);
  set("epsilon_decay", o.epsilon_decay);
  set("alpha", o.alpha);
  set("gamma", o.gamma);
  set("episodes", o.episodes);
  set("grid_points", o.grid_points);
  set("weekday_multiplier", o.weekday_multiplier);
  set("weekend_multiplier", o.weekend_multiplier);
  set("line_search_tolerance", o.tolerance);
  set("jobs", o.jobs);
  if (o.seed) check(qp_config_set_seed(config.get(), *o.seed), "seed");

  if (o.cost_policy || o.cost_fraction) {
    double fraction = 0.0;
    check(qp_config_get_number(config.get(), "cost_fraction", &fraction), "cost_fraction");
    if (o.cost_fraction) fraction = *o.cost_fraction;
    qp_cost_policy policy = QP_COST_FRACTION_OF_BASE_PRICE;
    if (o.cost_policy == "catalog") policy = QP_COST_FROM_CATALOG;
    else if (o.cost_policy == "zero") policy = QP_COST_ZERO;
    check(qp_config_set_cost_policy(config.get(), policy, fraction), "cost policy");
  }
  return config;
}

CatalogPtr load_catalog(const std::string& path) {
  qp_catalog* raw = nullptr;
  if (path.empty()) {
    check(qp_catalog_sample(&raw), "sample catalog");
    return CatalogPtr(raw);
  }
  const std::string csv = read_file(path);
  check(qp_catalog_parse(csv.data(), csv.size(), &raw), "catalog '" + path + "'");
  return CatalogPtr(raw);
}

qp_format parse_format(const std::string& name) {
  if (name == "json") return QP_FORMAT_JSON;
  if (name == "markdown" || name == "md") return QP_FORMAT_MARKDOWN;
  return QP_FORMAT_CSV;
}

OwnedText take(char* text) { return OwnedText(text); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qprice: Q-learning dynamic pricing experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qp_version()));
  app.set_help_all_flag("--help-all", "Print help for every subcommand and flag");

  std::string catalog_path;
  std::string output_path;
  std::string format = "csv";
  const auto add_catalog = [&](CLI::App* cmd, const char* help) {
    cmd->add_option("--catalog", catalog_path, help);
  };
  const auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("-o,--output", output_path, "Output file (default: standard output)");
  };
  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Report format: csv, json or markdown")
        ->check(CLI::IsMember({"csv", "json", "markdown", "md"}));
  };

  Overrides overrides;

  auto* sample = app.add_subcommand("sample-catalog", "Print the built-in reference catalog CSV");
  add_output(sample);

  auto* validate = app.add_subcommand("validate", "Check a catalog CSV and report every row");
  validate->add_option("--catalog", catalog_path, "Catalog CSV to check")->required();
  add_output(validate);

  auto* curve = app.add_subcommand("curve", "Export revenue curves as long-format CSV");
  std::size_t samples = 101;
  add_catalog(curve, "Catalog CSV (default: built-in reference catalog)");
  curve->add_option("--samples", samples, "Prices per curve (>= 2)");
  add_output(curve);
  add_overrides(curve, overrides);

  auto* train = app.add_subcommand("train", "Train one product and write its Q-table CSV");
  std::string product;
  std::string sidecar_path;
  add_catalog(train, "Catalog CSV (default: built-in reference catalog)");
  train->add_option("--product", product, "Product name")->required();
  train->add_option("--sidecar", sidecar_path,
                    "Hyperparameter JSON path (default: <output>.json when --output is set)");
  add_output(train);
  add_overrides(train, overrides);

  auto* optimize = app.add_subcommand("optimize", "Run the classical optimizers only");
  add_catalog(optimize, "Catalog CSV (default: built-in reference catalog)");
  add_format(optimize);
  add_output(optimize);
  add_overrides(optimize, overrides);

  auto* compare = app.add_subcommand("compare", "Train every product and compare with baselines");
  add_catalog(compare, "Catalog CSV (default: built-in reference catalog)");
  add_format(compare);
  add_output(compare);
  add_overrides(compare, overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sample->parsed()) {
      CatalogPtr catalog = load_catalog("");
      char* text = nullptr;
      check(qp_catalog_to_csv(catalog.get(), &text), "sample-catalog");
      write_output(output_path, take(text).get());
      return kExitOk;
    }

    if (validate->parsed()) {
      CatalogPtr catalog = load_catalog(catalog_path);
      char* text = nullptr;
      check(qp_catalog_validation_report(catalog.get(), &text), "validate");
      write_output(output_path, take(text).get());
      return qp_catalog_rejected_count(catalog.get()) > 0 ? kExitRejected : kExitOk;
    }

    ConfigPtr config = build_config(overrides);
    CatalogPtr catalog = load_catalog(catalog_path);
    char* text = nullptr;

    if (curve->parsed()) {
      check(qp_revenue_curves(catalog.get(), config.get(), samples, &text), "curve");
      write_output(output_path, take(text).get());
    } else if (optimize->parsed()) {
      check(qp_optimize(catalog.get(), config.get(), parse_format(format), &text), "optimize");
      write_output(output_path, take(text).get());
    } else if (compare->parsed()) {
      check(qp_compare(catalog.get(), config.get(), parse_format(format), &text), "compare");
      write_output(output_path, take(text).get());
    } else if (train->parsed()) {
      qp_qtable* raw = nullptr;
      check(qp_train_product(catalog.get(), config.get(), product.c_str(), &raw), "train");
      QTablePtr table(raw);
      check(qp_qtable_to_csv(table.get(), &text), "train");
      write_output(output_path, take(text).get());
      std::string sidecar = sidecar_path;
      if (sidecar.empty() && !output_path.empty() && output_path != "-") sidecar = output_path + ".json";
      if (!sidecar.empty()) {
        char* json = nullptr;
        check(qp_qtable_provenance_json(table.get(), &json), "train");
        write_output(sidecar, take(json).get());
      }
    }
    return kExitOk;
  } catch (const Failure& f) {
    std::cerr << "qprice: " << f.message << "\n";
    return f.code;
  }
}
