#pragma once

// Las Vegas to Monte Carlo: run a player for at most 10 times its expected
// number of flips and report an error if it has not finished by then.

#include "memlab/strategies.hpp"

#include <cstdint>
#include <memory>

namespace memlab {

class TruncatedPlayer final : public BlindPlayer {
 public:
  // Budget is floor(10 * expected_T) flips. Throws for expected_T <= 0.
  TruncatedPlayer(std::unique_ptr<BlindPlayer> inner, double expected_T);
  TruncatedPlayer(const TruncatedPlayer& other);

  std::string name() const override { return "truncated-" + inner_->name(); }
  std::optional<int> next_position() override;
  std::vector<PositionPair> examine(int position, std::span<const std::uint8_t> equal) override {
    return inner_->examine(position, equal);
  }
  std::span<const int> working_set() const override { return inner_->working_set(); }
  int pass_index() const override { return inner_->pass_index(); }
  std::unique_ptr<BlindPlayer> clone() const override { return std::make_unique<TruncatedPlayer>(*this); }

  std::int64_t budget() const { return budget_; }
  std::int64_t flips() const { return flips_; }
  // The inner player still wanted to flip when the budget ran out.
  bool errored() const { return errored_; }

 private:
  std::unique_ptr<BlindPlayer> inner_;
  std::int64_t budget_;
  std::int64_t flips_ = 0;
  bool errored_ = false;
  bool halted_ = false;
};

struct TruncationReport {
  int n = 0;
  int capacity = 0;
  double expected_T = 0.0;  // mean flips measured on an independent batch
  std::int64_t budget = 0;
  std::int64_t trials = 0;
  std::int64_t errors = 0;
  std::int64_t wrong = 0;   // finished runs whose outputs were not exactly the matches
  double rate = 0.0;
  double sigma = 0.0;       // sqrt(0.1 * 0.9 / trials)
  bool ok = false;          // rate <= 0.1 + 3 sigma and no wrong outputs
};

// Mean flips of the shuffled multi-pass player over `trials` random decks and
// visiting orders. Trial k uses deck seed split_seed(seed, 2k) and order seed
// split_seed(seed, 2k+1).
double mean_shuffled_flips(int n, int capacity, std::int64_t trials, std::uint64_t seed, int jobs = 1);

// Measures the mean on stream split_seed(seed, 0), then runs the truncated
// player on stream split_seed(seed, 1). When expected_T is given it is used
// instead of the measurement.
TruncationReport truncation_experiment(int n, int capacity, std::int64_t trials, std::uint64_t seed,
                                       int jobs = 1, std::optional<double> expected_T = std::nullopt);

}  // namespace memlab
