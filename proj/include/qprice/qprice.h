/*
 * qprice C API.
 *
 * Every function returning qp_status reports failures through the return
 * code; qp_last_error() then holds a message for the calling thread. Strings
 * returned through `char** out` parameters are owned by the caller and must
 * be released with qp_string_free(). Handles are released with their
 * matching *_free function; passing NULL to any *_free is a no-op.
 */
#ifndef QPRICE_QPRICE_H
#define QPRICE_QPRICE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QPRICE_BUILDING_LIBRARY)
#    define QP_API __declspec(dllexport)
#  else
#    define QP_API __declspec(dllimport)
#  endif
#else
#  define QP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qp_status {
  QP_OK = 0,
  QP_ERR_NULL_ARG = 1,         /* a required pointer argument was NULL */
  QP_ERR_INVALID_ARGUMENT = 2, /* value out of range, unknown key, bad enum */
  QP_ERR_PARSE = 3,            /* malformed input text (catalog header, JSON) */
  QP_ERR_NOT_FOUND = 4,        /* named product does not exist */
  QP_ERR_INTERNAL = 5
} qp_status;

typedef enum qp_format { QP_FORMAT_CSV = 0, QP_FORMAT_JSON = 1, QP_FORMAT_MARKDOWN = 2 } qp_format;

typedef enum qp_cost_policy {
  QP_COST_FROM_CATALOG = 0,
  QP_COST_ZERO = 1,
  QP_COST_FRACTION_OF_BASE_PRICE = 2
} qp_cost_policy;

typedef enum qp_day_type { QP_WEEKDAY = 0, QP_WEEKEND = 1 } qp_day_type;

typedef struct qp_catalog qp_catalog;
typedef struct qp_config qp_config;
typedef struct qp_qtable qp_qtable;

QP_API const char* qp_version(void);
QP_API const char* qp_last_error(void);
QP_API void qp_clear_last_error(void);
QP_API void qp_string_free(char* text);

/* --- market model ------------------------------------------------------- */

QP_API double qp_demand(double base_demand, double base_price, double elasticity, double price,
                        double multiplier);
QP_API double qp_reward(double unit_cost, double price, double units);

/* --- catalog ------------------------------------------------------------ */

/* Parses catalog CSV. Rejected rows do not fail the call; inspect them with
 * qp_catalog_rejected_count / qp_catalog_validation_report. A missing or
 * wrong header returns QP_ERR_PARSE. */
QP_API qp_status qp_catalog_parse(const char* csv, size_t length, qp_catalog** out);
/* The built-in fourteen-product reference catalog. */
QP_API qp_status qp_catalog_sample(qp_catalog** out);
QP_API void qp_catalog_free(qp_catalog* catalog);

QP_API size_t qp_catalog_size(const qp_catalog* catalog);
QP_API size_t qp_catalog_rejected_count(const qp_catalog* catalog);
QP_API qp_status qp_catalog_product(const qp_catalog* catalog, size_t index, double* base_demand,
                                    double* base_price, double* elasticity, double* unit_cost);
/* Borrowed pointer, valid until the catalog is freed. */
QP_API const char* qp_catalog_product_name(const qp_catalog* catalog, size_t index);
QP_API qp_status qp_catalog_to_csv(const qp_catalog* catalog, char** out);
QP_API qp_status qp_catalog_validation_report(const qp_catalog* catalog, char** out);

/* --- configuration ------------------------------------------------------ */

QP_API qp_status qp_config_new(qp_config** out);
QP_API void qp_config_free(qp_config* config);

/* Applies a flat JSON document on top of the current values. On failure the
 * config is unchanged and the error message names the offending key. */
QP_API qp_status qp_config_load_json(qp_config* config, const char* json, size_t length);
QP_API qp_status qp_config_to_json(const qp_config* config, char** out);

/* Numeric fields by name: alpha, gamma, epsilon_start, epsilon_min,
 * epsilon_decay, episodes, steps_per_episode, grid_points, grid_lo_ratio,
 * grid_hi_ratio, weekday_multiplier, weekend_multiplier, cost_fraction,
 * line_search_tolerance, demand_noise_sd, jobs. The resulting config must
 * stay valid, otherwise QP_ERR_INVALID_ARGUMENT and no change. */
QP_API qp_status qp_config_set_number(qp_config* config, const char* key, double value);
QP_API qp_status qp_config_get_number(const qp_config* config, const char* key, double* value);
QP_API qp_status qp_config_set_seed(qp_config* config, uint64_t master_seed);
QP_API qp_status qp_config_set_cost_policy(qp_config* config, qp_cost_policy policy, double fraction);

/* --- workflows ---------------------------------------------------------- */

/* Trains every product and runs all baselines; renders the comparison report. */
QP_API qp_status qp_compare(const qp_catalog* catalog, const qp_config* config, qp_format format,
                            char** out);
/* Baselines only. */
QP_API qp_status qp_optimize(const qp_catalog* catalog, const qp_config* config, qp_format format,
                             char** out);
/* Long-format revenue curve CSV. */
QP_API qp_status qp_revenue_curves(const qp_catalog* catalog, const qp_config* config,
                                   size_t samples_per_curve, char** out);

/* Trains the named product with the seed run_experiment would give it. */
QP_API qp_status qp_train_product(const qp_catalog* catalog, const qp_config* config,
                                  const char* product_name, qp_qtable** out);
QP_API void qp_qtable_free(qp_qtable* table);
QP_API size_t qp_qtable_state_count(const qp_qtable* table);
QP_API size_t qp_qtable_action_count(const qp_qtable* table);
QP_API qp_status qp_qtable_value(const qp_qtable* table, size_t state, size_t action, double* value);
QP_API qp_status qp_qtable_greedy_price(const qp_qtable* table, qp_day_type day, double* price);
QP_API qp_status qp_qtable_to_csv(const qp_qtable* table, char** out);
QP_API qp_status qp_qtable_provenance_json(const qp_qtable* table, char** out);

#ifdef __cplusplus
}
#endif

#endif /* QPRICE_QPRICE_H */
