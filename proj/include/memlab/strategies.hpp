#pragma once

// Space-accounted players. A blind player never sees picture values: when it
// examines a card it is told, for every index in its working set, whether the
// two cards are equal. Outputs are position pairs; whoever drives the player
// (a real deck or the adversary) attaches the value.

#include "memlab/game.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace memlab {

// ceil(log2(2n)): bits needed to name one of the 2n positions.
int bits_per_index(int n);

struct SpaceBudget {
  int space_bits = 0;      // S
  int bits_per_index = 1;  // ceil(log2(2n))
  int capacity = 0;        // s = floor(S / bits_per_index)

  static SpaceBudget from_bits(int n, int space_bits);
  static SpaceBudget from_capacity(int n, int capacity);
};

using PositionPair = std::pair<int, int>;

class BlindPlayer {
 public:
  virtual ~BlindPlayer() = default;

  virtual std::string name() const = 0;

  // Next card to examine, or nullopt once the player is finished.
  virtual std::optional<int> next_position() = 0;

  // equal[k] tells whether the examined card equals working_set()[k], where
  // the working set is the one in force before this call. Returns the pairs
  // the player declares matched. Afterwards the working set must be a subset
  // of the old one plus `position`.
  virtual std::vector<PositionPair> examine(int position, std::span<const std::uint8_t> equal) = 0;

  virtual std::span<const int> working_set() const = 0;

  // Current pass for multi-pass style players; 0 when passes do not apply.
  virtual int pass_index() const { return 0; }

  virtual std::unique_ptr<BlindPlayer> clone() const = 0;
};

// Multi-pass player. Pass p stores the not-yet-removed cards
// at visiting-order slots (p-1)s+1 .. ps, then scans the later slots without
// storing them. The visiting order is the identity unless a permutation is
// supplied (the randomized variant).
class MultiPassPlayer final : public BlindPlayer {
 public:
  MultiPassPlayer(int n, int capacity);
  MultiPassPlayer(int n, int capacity, std::vector<int> order);

  static MultiPassPlayer shuffled(int n, int capacity, std::uint64_t seed);

  std::string name() const override;
  std::optional<int> next_position() override;
  std::vector<PositionPair> examine(int position, std::span<const std::uint8_t> equal) override;
  std::span<const int> working_set() const override { return working_; }
  int pass_index() const override { return pass_; }
  std::unique_ptr<BlindPlayer> clone() const override;

 private:
  bool removed(int position) const { return removed_[static_cast<std::size_t>(position)] != 0; }

  int n_;
  int capacity_;
  bool shuffled_ = false;
  std::vector<int> order_;
  std::vector<std::uint8_t> removed_;
  std::vector<int> working_;
  int pass_ = 0;
  bool storing_ = true;
  int cursor_ = 0;
  int matched_ = 0;
};

// Examines card 1 and immediately declares it matched with card n+1. Only
// exists to exercise the incorrect-strategy paths.
class GuessPlayer final : public BlindPlayer {
 public:
  explicit GuessPlayer(int n) : n_(n) {}

  std::string name() const override { return "guess"; }
  std::optional<int> next_position() override;
  std::vector<PositionPair> examine(int position, std::span<const std::uint8_t> equal) override;
  std::span<const int> working_set() const override { return {}; }
  std::unique_ptr<BlindPlayer> clone() const override { return std::make_unique<GuessPlayer>(*this); }

 private:
  int n_;
  bool done_ = false;
};

// Known names: "multipass", "multipass-shuffled", "guess".
std::unique_ptr<BlindPlayer> make_blind_player(const std::string& name, int n, int capacity,
                                               std::uint64_t seed);
std::vector<std::string> blind_player_names();

// ---------------------------------------------------------------------------
// Driving a blind player

struct DriveHooks {
  // Answers one pairwise equality query.
  std::function<bool(int, int)> equal;
  // Value to attach to a declared match, or nullopt to reject the claim.
  std::function<std::optional<int>(int, int)> output_value;
};

enum class DriveStatus {
  Finished,   // n matches output
  Stopped,    // player stopped early
  FlipLimit,  // flip budget exhausted while the player wanted to continue
  Rejected,   // a declared match was rejected
};

struct DriveResult {
  DriveStatus status = DriveStatus::Stopped;
  int outputs = 0;
  std::optional<PositionPair> rejected;
};

// Runs the player until it finishes, stops, hits the flip limit or makes a
// rejected claim. Every flip is logged with the post-step working-set size and
// every equality bit as a PairQuery. Contract violations by the player (bad
// position, working set not a subset of old + examined) throw std::logic_error.
DriveResult drive_blind(BlindPlayer& player, int n, const DriveHooks& hooks, Transcript& transcript,
                        std::optional<std::int64_t> flip_limit = std::nullopt);

struct PlayResult {
  Transcript transcript;
  DriveResult drive;
};

PlayResult play_on_deck(BlindPlayer& player, const ValidInput& x,
                        std::optional<std::int64_t> flip_limit = std::nullopt);

// Throws std::invalid_argument naming the minimum S when budget.capacity < 1.
Transcript multi_pass_play(const ValidInput& x, const SpaceBudget& budget);

// ceil(2n/s) * 2n.
std::int64_t multi_pass_time_bound(int n, const SpaceBudget& budget);

// Perfect-memory baseline. Reads raw values, remembers every card it has
// seen and flips each card at most twice.
Transcript perfect_memory_play(const ValidInput& x);

// True iff the largest recorded working set fits in S bits. An empty
// transcript passes; a non-empty one without working-set records throws
// std::invalid_argument.
bool space_audit(const Transcript& t, const SpaceBudget& budget);

}  // namespace memlab
