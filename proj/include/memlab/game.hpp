#pragma once

// Game universe: valid decks, matches, transcripts and the deck/event file
// formats. Positions and picture values are 1-based throughout, so a deck of
// n pairs occupies positions 1..2n and values come from 1..R.

#include "memlab/rng.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace memlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

struct GameParams {
  int n = 1;
  int R = 1;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument unless n >= 1 and R >= n.
  void validate() const;
};

struct MatchTriple {
  int i = 0;
  int j = 0;
  int v = 0;

  auto operator<=>(const MatchTriple&) const = default;
};

std::string to_string(const MatchTriple& m);

// Thrown when a value sequence is not a valid deck; the message lists the
// offending value multiplicities.
class InvalidDeck : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A deck of 2n cards in which exactly n distinct values occur twice each.
class ValidInput {
 public:
  explicit ValidInput(std::vector<int> values);

  int n() const { return static_cast<int>(values_.size() / 2); }
  int size() const { return static_cast<int>(values_.size()); }
  int at(int position) const { return values_.at(static_cast<std::size_t>(position - 1)); }
  std::span<const int> values() const { return values_; }
  int max_value() const;

  bool operator==(const ValidInput&) const = default;

 private:
  struct Trusted {};
  ValidInput(std::vector<int> values, Trusted) : values_(std::move(values)) {}
  friend void for_each_valid_input(int, int, std::uint64_t,
                                   const std::function<void(const ValidInput&)>&);

  std::vector<int> values_;
};

// nullopt for a valid deck, otherwise a diagnostic naming bad multiplicities.
std::optional<std::string> deck_problem(std::span<const int> values);

std::string to_string(const ValidInput& x);

// Uniform over the value subsets of size n from [R], then uniform over
// arrangements. Deterministic in params.seed.
ValidInput generate_valid_input(const GameParams& params);
ValidInput generate_valid_input(int n, int R, Rng& rng);

// |X| = C(R, n) * (2n)! / 2^n.
BigInt count_valid_inputs(int n, int R);

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, BigInt count)
      : std::runtime_error(what), count_(std::move(count)) {}
  const BigInt& count() const { return count_; }

 private:
  BigInt count_;
};

// Visits every valid deck exactly once, in lexicographic order of the value
// sequence. Throws CapExceeded (carrying |X|) when |X| > cap.
void for_each_valid_input(int n, int R, std::uint64_t cap,
                          const std::function<void(const ValidInput&)>& visit);

std::vector<ValidInput> enumerate_valid_inputs(int n, int R,
                                               std::uint64_t cap = kDefaultEnumerationCap);

// The n matches of x, ordered by first position.
std::vector<MatchTriple> matches_of(const ValidInput& x);

// Validates first; throws InvalidDeck with the multiplicity diagnostic.
std::vector<MatchTriple> matches_of(std::span<const int> values);

// ---------------------------------------------------------------------------
// Transcripts

enum class EventKind { Flip, PairQuery, Output, Deletion, Vanish, PassBoundary };

std::string_view event_name(EventKind kind);

// One logged step. Argument meaning by kind:
//   Flip          position, working-set size after the step (-1 = not tracked)
//   PairQuery     i, j, answer (0/1)
//   Output        i, j, v
//   Deletion      left, right
//   Vanish        left, right
//   PassBoundary  pass index (1-based)
struct Event {
  EventKind kind = EventKind::Flip;
  int arg1 = 0;
  int arg2 = 0;
  int arg3 = 0;

  bool operator==(const Event&) const = default;
};

class Transcript {
 public:
  void add_flip(int position, std::optional<int> working_set_size = std::nullopt);
  void add_query(int i, int j, bool answer);
  // Throws std::logic_error if the triple was already output.
  void add_output(const MatchTriple& m);
  void add_deletion(int left, int right);
  void add_vanish(int left, int right);
  void add_pass(int index);

  const std::vector<Event>& events() const { return events_; }
  std::int64_t flips() const { return flips_; }
  std::int64_t queries() const { return queries_; }
  int passes() const { return passes_; }
  const std::vector<MatchTriple>& outputs() const { return outputs_; }
  bool empty() const { return events_.empty(); }

  // True iff every Flip carries a working-set size.
  bool tracks_working_set() const { return untracked_flips_ == 0; }
  int max_working_set() const { return max_working_set_; }

  // CSV with header step,event,arg1,arg2,arg3.
  void write_csv(std::ostream& out) const;
  static Transcript read_csv(std::istream& in);

 private:
  std::vector<Event> events_;
  std::vector<MatchTriple> outputs_;
  std::set<MatchTriple> output_set_;
  std::int64_t flips_ = 0;
  std::int64_t queries_ = 0;
  std::int64_t untracked_flips_ = 0;
  int passes_ = 0;
  int max_working_set_ = 0;
};

struct VerificationReport {
  bool ok = false;
  std::vector<MatchTriple> missing;
  std::vector<MatchTriple> unexpected;
  std::int64_t flips = 0;
  std::int64_t queries = 0;

  std::string describe() const;
};

// Checks that the transcript's outputs are exactly matches_of(x).
VerificationReport verify_transcript(const ValidInput& x, const Transcript& t);

// ---------------------------------------------------------------------------
// Deck text format: header line "n R", then one deck per line with 2n
// space-separated values.

struct DeckFile {
  int n = 0;
  int R = 0;
  std::vector<ValidInput> decks;
};

void write_decks(std::ostream& out, int n, int R, std::span<const ValidInput> decks);
DeckFile read_decks(std::istream& in);

}  // namespace memlab
