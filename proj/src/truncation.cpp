#include "memlab/truncation.hpp"

#include "memlab/parallel.hpp"
#include "memlab/rng.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace memlab {

TruncatedPlayer::TruncatedPlayer(std::unique_ptr<BlindPlayer> inner, double expected_T)
    : inner_(std::move(inner)) {
  if (!inner_) throw std::invalid_argument("truncated player needs an inner player");
  if (!(expected_T > 0)) throw std::invalid_argument("expected_T must be positive");
  budget_ = static_cast<std::int64_t>(std::floor(10.0 * expected_T));
}

TruncatedPlayer::TruncatedPlayer(const TruncatedPlayer& other)
    : inner_(other.inner_->clone()),
      budget_(other.budget_),
      flips_(other.flips_),
      errored_(other.errored_),
      halted_(other.halted_) {}

std::optional<int> TruncatedPlayer::next_position() {
  if (halted_) return std::nullopt;
  if (flips_ >= budget_) {
    halted_ = true;
    errored_ = inner_->next_position().has_value();
    return std::nullopt;
  }
  auto pos = inner_->next_position();
  if (!pos) {
    halted_ = true;
    return std::nullopt;
  }
  ++flips_;
  return pos;
}

namespace {

struct TrialOutcome {
  std::int64_t flips = 0;
  bool errored = false;
  bool wrong = false;
};

TrialOutcome run_trial(int n, int capacity, std::uint64_t stream, std::int64_t k,
                       std::optional<double> expected_T) {
  Rng deck_rng(split_seed(stream, 2 * static_cast<std::uint64_t>(k)));
  const ValidInput x = generate_valid_input(n, n, deck_rng);
  auto inner = std::make_unique<MultiPassPlayer>(
      MultiPassPlayer::shuffled(n, capacity, split_seed(stream, 2 * static_cast<std::uint64_t>(k) + 1)));
  TrialOutcome out;
  if (!expected_T) {
    const auto r = play_on_deck(*inner, x);
    out.flips = r.transcript.flips();
    out.wrong = !verify_transcript(x, r.transcript).ok;
    return out;
  }
  TruncatedPlayer player(std::move(inner), *expected_T);
  const auto r = play_on_deck(player, x);
  out.flips = r.transcript.flips();
  out.errored = player.errored();
  if (!out.errored) out.wrong = !verify_transcript(x, r.transcript).ok;
  return out;
}

}  // namespace

double mean_shuffled_flips(int n, int capacity, std::int64_t trials, std::uint64_t seed, int jobs) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  const auto outcomes = parallel_map(static_cast<std::size_t>(trials), jobs, [&](std::size_t k) {
    return run_trial(n, capacity, seed, static_cast<std::int64_t>(k), std::nullopt);
  });
  double total = 0;
  for (const auto& o : outcomes) {
    if (o.wrong) throw std::logic_error("shuffled multi-pass produced a wrong transcript");
    total += static_cast<double>(o.flips);
  }
  return total / static_cast<double>(trials);
}

TruncationReport truncation_experiment(int n, int capacity, std::int64_t trials, std::uint64_t seed,
                                       int jobs, std::optional<double> expected_T) {
  TruncationReport rep;
  rep.n = n;
  rep.capacity = capacity;
  rep.trials = trials;
  rep.expected_T = expected_T ? *expected_T : mean_shuffled_flips(n, capacity, trials, split_seed(seed, 0), jobs);
  rep.budget = static_cast<std::int64_t>(std::floor(10.0 * rep.expected_T));
  const auto outcomes = parallel_map(static_cast<std::size_t>(trials), jobs, [&](std::size_t k) {
    return run_trial(n, capacity, split_seed(seed, 1), static_cast<std::int64_t>(k), rep.expected_T);
  });
  for (const auto& o : outcomes) {
    rep.errors += o.errored ? 1 : 0;
    rep.wrong += o.wrong ? 1 : 0;
  }
  rep.rate = static_cast<double>(rep.errors) / static_cast<double>(trials);
  rep.sigma = std::sqrt(0.1 * 0.9 / static_cast<double>(trials));
  rep.ok = rep.rate <= 0.1 + 3 * rep.sigma && rep.wrong == 0;
  return rep;
}

}  // namespace memlab
