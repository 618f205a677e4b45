#include "qprice/qlearn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qprice/text.hpp"

namespace qprice {

namespace {

constexpr std::array<std::string_view, kDaysPerWeek> kDayNames{"Mon", "Tue", "Wed", "Thu",
                                                               "Fri", "Sat", "Sun"};

// Stream index for demand noise, distinct from the action stream.
constexpr std::uint64_t kNoiseStream = 0x6E6F697365ULL;

}  // namespace

void validate(const Hyperparams& hp) {
  const auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (!(hp.alpha > 0.0 && hp.alpha <= 1.0)) fail("alpha must be in (0, 1]");
  if (!(hp.gamma >= 0.0 && hp.gamma < 1.0)) fail("gamma must be in [0, 1)");
  if (!(hp.epsilon_start >= 0.0 && hp.epsilon_start <= 1.0))
    fail("epsilon_start must be in [0, 1]");
  if (!(hp.epsilon_min >= 0.0 && hp.epsilon_min <= hp.epsilon_start))
    fail("epsilon_min must be in [0, epsilon_start]");
  if (!(hp.epsilon_decay > 0.0 && hp.epsilon_decay <= 1.0))
    fail("epsilon_decay must be in (0, 1]");
  if (hp.episodes < 1) fail("episodes must be >= 1");
  if (hp.steps_per_episode < 1) fail("steps_per_episode must be >= 1");
}

Hyperparams make_hyperparams(const Hyperparams& hp) {
  validate(hp);
  return hp;
}

std::string_view calendar_day_name(std::size_t day) noexcept {
  return kDayNames[day % kDaysPerWeek];
}

std::string calendar_state_label(std::size_t day) {
  return std::string(calendar_day_name(day)) + "/" +
         std::string(to_string(calendar_day_type(day)));
}

QTable::QTable(std::size_t state_count, std::size_t action_count)
    : states_(state_count), actions_(action_count), values_(state_count * action_count, 0.0) {
  if (state_count == 0 || action_count == 0)
    throw std::invalid_argument("Q-table dimensions must be positive");
}

double& QTable::at(std::size_t state, std::size_t action) {
  if (state >= states_ || action >= actions_) throw std::out_of_range("Q-table index");
  return values_[state * actions_ + action];
}

double QTable::at(std::size_t state, std::size_t action) const {
  if (state >= states_ || action >= actions_) throw std::out_of_range("Q-table index");
  return values_[state * actions_ + action];
}

std::span<const double> QTable::row(std::size_t state) const {
  if (state >= states_) throw std::out_of_range("Q-table state");
  return std::span<const double>(values_).subspan(state * actions_, actions_);
}

std::size_t QTable::argmax(std::size_t state) const {
  const auto r = row(state);
  std::size_t best = 0;
  for (std::size_t a = 1; a < r.size(); ++a)
    if (r[a] > r[best]) best = a;
  return best;
}

double QTable::max(std::size_t state) const { return row(state)[argmax(state)]; }

std::size_t select_action(const QTable& q, std::size_t state, double epsilon, Rng& rng) {
  if (rng.uniform() < epsilon) return rng.below(q.action_count());
  return q.argmax(state);
}

double update_q(QTable& q, std::size_t state, std::size_t action, double reward_value,
                std::optional<std::size_t> next_state, const Hyperparams& hp) {
  const double bootstrap = next_state ? q.max(*next_state) : 0.0;
  double& entry = q.at(state, action);
  entry = (1.0 - hp.alpha) * entry + hp.alpha * (reward_value + hp.gamma * bootstrap);
  return entry;
}

double epsilon_at(const Hyperparams& hp, std::uint64_t episode) {
  return std::max(hp.epsilon_min,
                  hp.epsilon_start * std::pow(hp.epsilon_decay, static_cast<double>(episode)));
}

TrainResult train(const ProductSpec& spec, const PriceGrid& grid, const DayModulation& modulation,
                  const Hyperparams& hp, const TrainOptions& options) {
  validate(spec);
  validate(modulation);
  validate(hp);
  if (!(options.demand_noise_sd >= 0.0) || !std::isfinite(options.demand_noise_sd))
    throw std::invalid_argument("demand_noise_sd must be >= 0");

  const std::size_t actions = grid.size();
  TrainResult result{QTable(kDaysPerWeek, actions), {}, std::vector<std::uint64_t>(kDaysPerWeek * actions, 0)};
  QTable& q = result.table;
  result.trace.reserve(hp.episodes);

  Rng rng(hp.seed);
  Rng noise_rng(split_seed(hp.seed, kNoiseStream));

  for (std::uint64_t episode = 0; episode < hp.episodes; ++episode) {
    const double epsilon = epsilon_at(hp, episode);
    double total = 0.0;
    for (std::uint64_t step = 0; step < hp.steps_per_episode; ++step) {
      const std::size_t day = step % kDaysPerWeek;
      const std::size_t action = select_action(q, day, epsilon, rng);
      const double price = grid[action];
      double units = demand(spec, price, modulation.multiplier(calendar_day_type(day)));
      if (options.demand_noise_sd > 0.0)
        units = std::max(0.0, units * (1.0 + options.demand_noise_sd * noise_rng.normal()));
      const double r = reward(spec, price, units);

      std::optional<std::size_t> next;
      if (step + 1 < hp.steps_per_episode) next = (step + 1) % kDaysPerWeek;
      update_q(q, day, action, r, next, hp);
      ++result.visits[day * actions + action];
      total += r;
    }

    EpisodeRecord record{episode, epsilon, total, std::nullopt};
    if (options.record_policy) {
      const auto decisions = evaluate_greedy(q, spec, grid, modulation);
      record.greedy = std::array<std::size_t, 2>{decisions[0].action, decisions[1].action};
    }
    result.trace.push_back(record);
  }
  return result;
}

namespace {

GreedyDecision decide(const ProductSpec& spec, const PriceGrid& grid,
                      const DayModulation& modulation, DayType type, std::size_t action) {
  const double price = grid[action];
  const double units = demand(spec, price, modulation.multiplier(type));
  return {type, action, price, units, reward(spec, price, units)};
}

void check_shape(const QTable& q, const PriceGrid& grid) {
  if (q.action_count() != grid.size())
    throw std::invalid_argument("Q-table has " + std::to_string(q.action_count()) +
                                " actions but the grid has " + std::to_string(grid.size()) +
                                " prices");
}

}  // namespace

std::array<GreedyDecision, 2> evaluate_greedy(const QTable& q, const ProductSpec& spec,
                                              const PriceGrid& grid,
                                              const DayModulation& modulation) {
  check_shape(q, grid);
  std::array<GreedyDecision, 2> out{};
  for (DayType type : kDayTypes) {
    std::vector<double> summed(q.action_count(), 0.0);
    for (std::size_t day = 0; day < q.state_count(); ++day) {
      if (calendar_day_type(day) != type) continue;
      const auto r = q.row(day);
      for (std::size_t a = 0; a < r.size(); ++a) summed[a] += r[a];
    }
    std::size_t best = 0;
    for (std::size_t a = 1; a < summed.size(); ++a)
      if (summed[a] > summed[best]) best = a;
    out[static_cast<std::size_t>(type)] = decide(spec, grid, modulation, type, best);
  }
  return out;
}

std::vector<GreedyDecision> evaluate_greedy_by_day(const QTable& q, const ProductSpec& spec,
                                                   const PriceGrid& grid,
                                                   const DayModulation& modulation) {
  check_shape(q, grid);
  std::vector<GreedyDecision> out;
  out.reserve(q.state_count());
  for (std::size_t day = 0; day < q.state_count(); ++day)
    out.push_back(decide(spec, grid, modulation, calendar_day_type(day), q.argmax(day)));
  return out;
}

std::string qtable_to_csv(const QTable& q, const PriceGrid& grid) {
  check_shape(q, grid);
  std::string out = "state";
  for (double p : grid.prices()) out += "," + format_number(p);
  out += '\n';
  for (std::size_t s = 0; s < q.state_count(); ++s) {
    out += csv_field(calendar_state_label(s));
    for (double v : q.row(s)) out += "," + format_number(v);
    out += '\n';
  }
  return out;
}

ParsedQTable qtable_from_csv(std::string_view csv) {
  const auto lines = split_lines(csv);
  if (lines.empty()) throw ParseError("line 1", "missing header");
  const auto header = split_csv_record(lines[0]);
  if (!header || header->size() < 3 || (*header)[0] != "state")
    throw ParseError("line 1", "expected header 'state,<price>,<price>,...'");
  std::vector<double> prices;
  for (std::size_t i = 1; i < header->size(); ++i) {
    const auto p = parse_number((*header)[i]);
    if (!p) throw ParseError("line 1", "bad price '" + (*header)[i] + "'");
    prices.push_back(*p);
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const std::string where = "line " + std::to_string(li + 1);
    const auto fields = split_csv_record(lines[li]);
    if (!fields || fields->size() != header->size()) throw ParseError(where, "wrong column count");
    std::vector<double> row;
    for (std::size_t i = 1; i < fields->size(); ++i) {
      const auto v = parse_number((*fields)[i]);
      if (!v) throw ParseError(where, "bad value '" + (*fields)[i] + "'");
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("line 2", "no state rows");
  ParsedQTable parsed{QTable(rows.size(), prices.size()), PriceGrid(std::move(prices))};
  for (std::size_t s = 0; s < rows.size(); ++s)
    for (std::size_t a = 0; a < rows[s].size(); ++a) parsed.table.at(s, a) = rows[s][a];
  return parsed;
}

std::string provenance_to_json(const TrainingProvenance& provenance) {
  const auto& hp = provenance.hyperparams;
  nlohmann::ordered_json j;
  j["alpha"] = hp.alpha;
  j["gamma"] = hp.gamma;
  j["epsilon_start"] = hp.epsilon_start;
  j["epsilon_min"] = hp.epsilon_min;
  j["epsilon_decay"] = hp.epsilon_decay;
  j["episodes"] = hp.episodes;
  j["steps_per_episode"] = hp.steps_per_episode;
  j["seed"] = hp.seed;
  j["rng"] = "xoshiro256**";
  j["product"] = {{"name", provenance.product.name},
                  {"base_demand", provenance.product.base_demand},
                  {"base_price", provenance.product.base_price},
                  {"elasticity", provenance.product.elasticity},
                  {"unit_cost", provenance.product.unit_cost}};
  j["weekday_multiplier"] = provenance.modulation.weekday_multiplier;
  j["weekend_multiplier"] = provenance.modulation.weekend_multiplier;
  j["grid"] = provenance.grid;
  return j.dump(2) + "\n";
}

TrainingProvenance provenance_from_json(std::string_view json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("json", e.what());
  }
  const auto get = [&](const nlohmann::json& obj, const char* key) -> const nlohmann::json& {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(key, "missing key");
    return obj.at(key);
  };
  try {
    TrainingProvenance p;
    p.hyperparams.alpha = get(j, "alpha").get<double>();
    p.hyperparams.gamma = get(j, "gamma").get<double>();
    p.hyperparams.epsilon_start = get(j, "epsilon_start").get<double>();
    p.hyperparams.epsilon_min = get(j, "epsilon_min").get<double>();
    p.hyperparams.epsilon_decay = get(j, "epsilon_decay").get<double>();
    p.hyperparams.episodes = get(j, "episodes").get<std::uint64_t>();
    p.hyperparams.steps_per_episode = get(j, "steps_per_episode").get<std::uint64_t>();
    p.hyperparams.seed = get(j, "seed").get<std::uint64_t>();
    const auto& prod = get(j, "product");
    p.product.name = get(prod, "name").get<std::string>();
    p.product.base_demand = get(prod, "base_demand").get<double>();
    p.product.base_price = get(prod, "base_price").get<double>();
    p.product.elasticity = get(prod, "elasticity").get<double>();
    p.product.unit_cost = get(prod, "unit_cost").get<double>();
    p.modulation.weekday_multiplier = get(j, "weekday_multiplier").get<double>();
    p.modulation.weekend_multiplier = get(j, "weekend_multiplier").get<double>();
    p.grid = get(j, "grid").get<std::vector<double>>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("json", e.what());
  }
}

}  // namespace qprice
