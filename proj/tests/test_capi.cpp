#include <gtest/gtest.h>

#include <cstdlib>
#include <string>

#include "qprice/qprice.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  qp_string_free(s);
  return out;
}

struct Handles {
  qp_catalog* catalog = nullptr;
  qp_config* config = nullptr;
  ~Handles() {
    qp_catalog_free(catalog);
    qp_config_free(config);
  }
};

}  // namespace

TEST(CApi, VersionAndModel) {
  EXPECT_STREQ(qp_version(), "0.1.0");
  EXPECT_EQ(qp_demand(54.0, 674.3, -1.7, 674.3, 1.0), 54.0);
  EXPECT_EQ(qp_demand(60.0, 2011.6, -8.4, 4023.2, 1.0), 0.0);
  EXPECT_EQ(qp_reward(40.0, 100.0, 50.0), 3000.0);
}

TEST(CApi, NullArgumentsAreReported) {
  EXPECT_EQ(qp_catalog_sample(nullptr), QP_ERR_NULL_ARG);
  EXPECT_NE(std::string(qp_last_error()), "");
  qp_clear_last_error();
  EXPECT_STREQ(qp_last_error(), "");
  qp_catalog_free(nullptr);
  qp_config_free(nullptr);
  qp_qtable_free(nullptr);
  qp_string_free(nullptr);
}

TEST(CApi, CatalogParseAndInspect) {
  Handles h;
  const std::string csv =
      "product_name,price_elasticity,base_price,base_demand\n"
      "A,-1.0,10.0,5.0\n"
      "B,2.0,10.0,5.0\n";
  ASSERT_EQ(qp_catalog_parse(csv.data(), csv.size(), &h.catalog), QP_OK);
  EXPECT_EQ(qp_catalog_size(h.catalog), 1u);
  EXPECT_EQ(qp_catalog_rejected_count(h.catalog), 1u);
  EXPECT_STREQ(qp_catalog_product_name(h.catalog, 0), "A");
  EXPECT_EQ(qp_catalog_product_name(h.catalog, 1), nullptr);
  double d, p, e, c;
  ASSERT_EQ(qp_catalog_product(h.catalog, 0, &d, &p, &e, &c), QP_OK);
  EXPECT_EQ(p, 10.0);
  EXPECT_EQ(qp_catalog_product(h.catalog, 5, &d, &p, &e, &c), QP_ERR_INVALID_ARGUMENT);
  char* report = nullptr;
  ASSERT_EQ(qp_catalog_validation_report(h.catalog, &report), QP_OK);
  EXPECT_NE(take(report).find("NonNegativeElasticity"), std::string::npos);
}

TEST(CApi, BadHeaderIsParseError) {
  qp_catalog* c = nullptr;
  const std::string csv = "nope\n";
  EXPECT_EQ(qp_catalog_parse(csv.data(), csv.size(), &c), QP_ERR_PARSE);
  EXPECT_EQ(c, nullptr);
  EXPECT_NE(std::string(qp_last_error()).find("line 1"), std::string::npos);
}

TEST(CApi, ConfigNumbersAndJson) {
  Handles h;
  ASSERT_EQ(qp_config_new(&h.config), QP_OK);
  double v = 0.0;
  ASSERT_EQ(qp_config_get_number(h.config, "alpha", &v), QP_OK);
  EXPECT_EQ(v, 0.1);
  EXPECT_EQ(qp_config_set_number(h.config, "alpha", 0.5), QP_OK);
  EXPECT_EQ(qp_config_set_number(h.config, "alpha", 5.0), QP_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(qp_config_set_number(h.config, "episodes", 2.5), QP_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(qp_config_set_number(h.config, "nonsense", 1.0), QP_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(qp_config_get_number(h.config, "alpha", &v), QP_OK);
  EXPECT_EQ(v, 0.5);

  const std::string bad = R"({"gama": 0.5})";
  EXPECT_EQ(qp_config_load_json(h.config, bad.data(), bad.size()), QP_ERR_PARSE);
  EXPECT_NE(std::string(qp_last_error()).find("gama"), std::string::npos);

  const std::string good = R"({"gamma": 0.5, "master_seed": 12})";
  EXPECT_EQ(qp_config_load_json(h.config, good.data(), good.size()), QP_OK);
  char* json = nullptr;
  ASSERT_EQ(qp_config_to_json(h.config, &json), QP_OK);
  const auto text = take(json);
  EXPECT_NE(text.find("\"master_seed\": 12"), std::string::npos);
  EXPECT_NE(text.find("\"gamma\": 0.5"), std::string::npos);
}

TEST(CApi, OptimizeAndCompare) {
  Handles h;
  ASSERT_EQ(qp_catalog_sample(&h.catalog), QP_OK);
  ASSERT_EQ(qp_config_new(&h.config), QP_OK);
  ASSERT_EQ(qp_config_set_cost_policy(h.config, QP_COST_ZERO, 0.0), QP_OK);
  ASSERT_EQ(qp_config_set_number(h.config, "episodes", 300), QP_OK);
  char* out = nullptr;
  ASSERT_EQ(qp_optimize(h.catalog, h.config, QP_FORMAT_CSV, &out), QP_OK);
  EXPECT_EQ(take(out).find("rl_"), std::string::npos);
  ASSERT_EQ(qp_compare(h.catalog, h.config, QP_FORMAT_MARKDOWN, &out), QP_OK);
  EXPECT_NE(take(out).find("Optimal Price"), std::string::npos);
  ASSERT_EQ(qp_revenue_curves(h.catalog, h.config, 3, &out), QP_OK);
  EXPECT_NE(take(out).find("product,day,price"), std::string::npos);
  EXPECT_EQ(qp_revenue_curves(h.catalog, h.config, 1, &out), QP_ERR_INVALID_ARGUMENT);
}

TEST(CApi, TrainProduct) {
  Handles h;
  ASSERT_EQ(qp_catalog_sample(&h.catalog), QP_OK);
  ASSERT_EQ(qp_config_new(&h.config), QP_OK);
  qp_qtable* t = nullptr;
  EXPECT_EQ(qp_train_product(h.catalog, h.config, "missing", &t), QP_ERR_NOT_FOUND);
  ASSERT_EQ(qp_train_product(h.catalog, h.config, "Samsung 24\" HD", &t), QP_OK);
  EXPECT_EQ(qp_qtable_state_count(t), 7u);
  EXPECT_EQ(qp_qtable_action_count(t), 21u);
  double price = 0.0;
  ASSERT_EQ(qp_qtable_greedy_price(t, QP_WEEKEND, &price), QP_OK);
  EXPECT_NEAR(price, 161.07, 1e-9);
  double q = 0.0;
  EXPECT_EQ(qp_qtable_value(t, 0, 0, &q), QP_OK);
  EXPECT_EQ(qp_qtable_value(t, 7, 0, &q), QP_ERR_INVALID_ARGUMENT);
  char* csv = nullptr;
  ASSERT_EQ(qp_qtable_to_csv(t, &csv), QP_OK);
  EXPECT_EQ(take(csv).rfind("state,", 0), 0u);
  char* json = nullptr;
  ASSERT_EQ(qp_qtable_provenance_json(t, &json), QP_OK);
  EXPECT_NE(take(json).find("\"alpha\""), std::string::npos);
  qp_qtable_free(t);
}
