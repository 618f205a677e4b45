#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qprice/pricing.hpp"
#include "qprice/rng.hpp"

namespace qprice {

/// Learning parameters. The constructor-style `make` rejects out-of-range values.
struct Hyperparams {
  double alpha = 0.1;            ///< learning rate, (0, 1]
  double gamma = 0.9;            ///< discount, [0, 1)
  double epsilon_start = 1.0;    ///< [0, 1]
  double epsilon_min = 0.05;     ///< [0, epsilon_start]
  double epsilon_decay = 0.99995;  ///< per episode, (0, 1]
  std::uint64_t episodes = 10'000;
  std::uint64_t steps_per_episode = 7;
  std::uint64_t seed = 0;

  bool operator==(const Hyperparams&) const = default;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const Hyperparams& hp);

/// Validated copy; throws on invalid input.
Hyperparams make_hyperparams(const Hyperparams& hp);

// The training calendar. Episodes start on Monday; day d has day type
// Weekday for d < 5 and Weekend otherwise.
inline constexpr std::size_t kDaysPerWeek = 7;
inline constexpr std::size_t kWeekdaysPerWeek = 5;

constexpr DayType calendar_day_type(std::size_t day) noexcept {
  return day % kDaysPerWeek < kWeekdaysPerWeek ? DayType::Weekday : DayType::Weekend;
}
std::string_view calendar_day_name(std::size_t day) noexcept;

/// Row label used in serialized tables, e.g. "Mon/Weekday".
std::string calendar_state_label(std::size_t day);

/// Dense action-value table, row-major (state, action). Zero-initialised.
class QTable {
 public:
  QTable(std::size_t state_count, std::size_t action_count);

  std::size_t state_count() const noexcept { return states_; }
  std::size_t action_count() const noexcept { return actions_; }

  double& at(std::size_t state, std::size_t action);
  double at(std::size_t state, std::size_t action) const;

  std::span<const double> row(std::size_t state) const;
  std::span<const double> values() const noexcept { return values_; }

  /// Index of the largest entry in `state`'s row; lowest index wins ties.
  std::size_t argmax(std::size_t state) const;
  double max(std::size_t state) const;

  bool operator==(const QTable&) const = default;

 private:
  std::size_t states_;
  std::size_t actions_;
  std::vector<double> values_;
};

/// Epsilon-greedy choice. Draws one uniform number; when it is below epsilon a
/// second draw picks a uniform action, otherwise the row argmax is returned.
/// The draws never depend on the table contents.
std::size_t select_action(const QTable& q, std::size_t state, double epsilon, Rng& rng);

/// q[s,a] <- (1 - alpha) q[s,a] + alpha (reward + gamma * max_a' q[s',a']).
/// `next_state` empty means terminal (bootstrap value 0). Returns the new entry.
double update_q(QTable& q, std::size_t state, std::size_t action, double reward_value,
                std::optional<std::size_t> next_state, const Hyperparams& hp);

/// max(epsilon_min, epsilon_start * epsilon_decay^episode)
double epsilon_at(const Hyperparams& hp, std::uint64_t episode);

struct EpisodeRecord {
  std::uint64_t episode = 0;
  double epsilon = 0.0;
  double total_reward = 0.0;
  /// Greedy action per day type after the episode, when snapshots are enabled.
  std::optional<std::array<std::size_t, 2>> greedy;

  bool operator==(const EpisodeRecord&) const = default;
};

using TrainingTrace = std::vector<EpisodeRecord>;

struct TrainOptions {
  bool record_policy = false;
  /// Relative sd of multiplicative Gaussian demand noise. 0 keeps the
  /// environment deterministic. Noise draws use a stream split from hp.seed.
  double demand_noise_sd = 0.0;
};

struct TrainResult {
  QTable table;
  TrainingTrace trace;
  /// Update count per (calendar day, action), same layout as the table.
  std::vector<std::uint64_t> visits;
};

/// Trains one product over a repeating Mon..Sun calendar. Each episode runs
/// hp.steps_per_episode days starting on Monday; the last step of an episode
/// is terminal. Bitwise deterministic in hp.seed.
TrainResult train(const ProductSpec& spec, const PriceGrid& grid, const DayModulation& modulation,
                  const Hyperparams& hp, const TrainOptions& options = {});

struct GreedyDecision {
  DayType day_type = DayType::Weekday;
  std::size_t action = 0;
  double price = 0.0;
  double demand = 0.0;
  double profit = 0.0;
};

/// Greedy price per day type. A day type's decision is the argmax of the sum
/// of its calendar rows (lowest index on ties). Demand and profit are
/// recomputed from the market model.
std::array<GreedyDecision, 2> evaluate_greedy(const QTable& q, const ProductSpec& spec,
                                              const PriceGrid& grid,
                                              const DayModulation& modulation);

/// Greedy decision for every calendar row individually.
std::vector<GreedyDecision> evaluate_greedy_by_day(const QTable& q, const ProductSpec& spec,
                                                   const PriceGrid& grid,
                                                   const DayModulation& modulation);

// Serialization. The table CSV has a header "state,<price>,<price>,..." and one
// row per calendar day ("Mon/Weekday,<q>,<q>,..."); numbers use the shortest
// text that round-trips.
std::string qtable_to_csv(const QTable& q, const PriceGrid& grid);

struct ParsedQTable {
  QTable table;
  PriceGrid grid;
};
ParsedQTable qtable_from_csv(std::string_view csv);

/// Provenance sidecar for a serialized table.
struct TrainingProvenance {
  Hyperparams hyperparams;
  ProductSpec product;
  DayModulation modulation;
  std::vector<double> grid;
};

std::string provenance_to_json(const TrainingProvenance& provenance);
TrainingProvenance provenance_from_json(std::string_view json);

}  // namespace qprice
