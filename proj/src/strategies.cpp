#include "memlab/strategies.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace memlab {

int bits_per_index(int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  int bits = 0;
  while ((std::int64_t{1} << bits) < 2 * static_cast<std::int64_t>(n)) ++bits;
  return bits;
}

SpaceBudget SpaceBudget::from_bits(int n, int space_bits) {
  if (space_bits < 0) throw std::invalid_argument("space bits must be non-negative");
  SpaceBudget b;
  b.space_bits = space_bits;
  b.bits_per_index = memlab::bits_per_index(n);
  b.capacity = space_bits / b.bits_per_index;
  return b;
}

SpaceBudget SpaceBudget::from_capacity(int n, int capacity) {
  if (capacity < 0) throw std::invalid_argument("capacity must be non-negative");
  return from_bits(n, capacity * memlab::bits_per_index(n));
}

// ---------------------------------------------------------------------------

MultiPassPlayer::MultiPassPlayer(int n, int capacity)
    : MultiPassPlayer(n, capacity, [n] {
        std::vector<int> order(2 * static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 1);
        return order;
      }()) {}

MultiPassPlayer::MultiPassPlayer(int n, int capacity, std::vector<int> order)
    : n_(n), capacity_(capacity), order_(std::move(order)) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (capacity < 1) throw std::invalid_argument("multi-pass player needs capacity >= 1");
  std::vector<int> sorted = order_;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < 2 * n; ++k) {
    if (static_cast<int>(sorted.size()) != 2 * n || sorted[static_cast<std::size_t>(k)] != k + 1) {
      throw std::invalid_argument("visiting order must be a permutation of 1..2n");
    }
  }
  removed_.assign(2 * static_cast<std::size_t>(n) + 1, 0);
  working_.reserve(static_cast<std::size_t>(std::min(capacity, 2 * n)));
}

MultiPassPlayer MultiPassPlayer::shuffled(int n, int capacity, std::uint64_t seed) {
  std::vector<int> order(2 * static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  Rng rng(seed);
  shuffle(std::span<int>(order), rng);
  MultiPassPlayer p(n, capacity, std::move(order));
  p.shuffled_ = true;
  return p;
}

std::string MultiPassPlayer::name() const { return shuffled_ ? "multipass-shuffled" : "multipass"; }

std::optional<int> MultiPassPlayer::next_position() {
  const int len = 2 * n_;
  while (matched_ < n_) {
    if (pass_ == 0) {
      pass_ = 1;
      storing_ = true;
      cursor_ = 0;
    }
    const int block_end = std::min(pass_ * capacity_, len);
    if (storing_) {
      while (cursor_ < block_end && removed(order_[static_cast<std::size_t>(cursor_)])) ++cursor_;
      if (cursor_ < block_end) return order_[static_cast<std::size_t>(cursor_++)];
      storing_ = false;
    }
    // Nothing stored means nothing to find in the scan.
    if (!working_.empty()) {
      while (cursor_ < len && removed(order_[static_cast<std::size_t>(cursor_)])) ++cursor_;
      if (cursor_ < len) return order_[static_cast<std::size_t>(cursor_++)];
    }
    if (block_end >= len) break;
    ++pass_;
    working_.clear();
    storing_ = true;
    cursor_ = block_end;
  }
  return std::nullopt;
}

std::vector<PositionPair> MultiPassPlayer::examine(int position, std::span<const std::uint8_t> equal) {
  for (std::size_t k = 0; k < equal.size(); ++k) {
    if (!equal[k]) continue;
    const int partner = working_[k];
    working_.erase(working_.begin() + static_cast<std::ptrdiff_t>(k));
    removed_[static_cast<std::size_t>(partner)] = 1;
    removed_[static_cast<std::size_t>(position)] = 1;
    ++matched_;
    return {{std::min(partner, position), std::max(partner, position)}};
  }
  if (storing_) working_.push_back(position);
  return {};
}

std::unique_ptr<BlindPlayer> MultiPassPlayer::clone() const {
  return std::make_unique<MultiPassPlayer>(*this);
}

std::optional<int> GuessPlayer::next_position() {
  if (done_) return std::nullopt;
  return 1;
}

std::vector<PositionPair> GuessPlayer::examine(int, std::span<const std::uint8_t>) {
  done_ = true;
  if (n_ < 1) return {};
  return {{1, n_ + 1}};
}

std::unique_ptr<BlindPlayer> make_blind_player(const std::string& name, int n, int capacity,
                                               std::uint64_t seed) {
  if (name == "multipass") return std::make_unique<MultiPassPlayer>(n, capacity);
  if (name == "multipass-shuffled") {
    return std::make_unique<MultiPassPlayer>(MultiPassPlayer::shuffled(n, capacity, seed));
  }
  if (name == "guess") return std::make_unique<GuessPlayer>(n);
  throw std::invalid_argument("unknown blind strategy '" + name + "'");
}

std::vector<std::string> blind_player_names() { return {"multipass", "multipass-shuffled", "guess"}; }

// ---------------------------------------------------------------------------

DriveResult drive_blind(BlindPlayer& player, int n, const DriveHooks& hooks, Transcript& transcript,
                        std::optional<std::int64_t> flip_limit) {
  const int len = 2 * n;
  std::vector<std::uint8_t> removed(static_cast<std::size_t>(len) + 1, 0);
  std::vector<std::uint8_t> bits;
  std::vector<int> before;
  DriveResult result;
  int last_pass = 0;
  std::int64_t flips = 0;

  auto violation = [&](const std::string& what) {
    throw std::logic_error(player.name() + " broke the blind-player contract: " + what);
  };

  while (result.outputs < n) {
    if (flip_limit && flips >= *flip_limit) {
      // Only a limit hit if the player actually wanted another card.
      auto probe = player.clone();
      result.status = probe->next_position() ? DriveStatus::FlipLimit : DriveStatus::Stopped;
      return result;
    }
    const auto next = player.next_position();
    if (!next) {
      result.status = DriveStatus::Stopped;
      return result;
    }
    const int pos = *next;
    if (pos < 1 || pos > len) violation("examined position " + std::to_string(pos) + " outside [1, 2n]");
    if (removed[static_cast<std::size_t>(pos)]) violation("examined removed card " + std::to_string(pos));

    if (const int pass = player.pass_index(); pass != 0 && pass != last_pass) {
      transcript.add_pass(pass);
      last_pass = pass;
    }

    auto ws = player.working_set();
    before.assign(ws.begin(), ws.end());
    bits.clear();
    for (int j : before) {
      if (j == pos) violation("working set already holds the examined card");
      const bool eq = hooks.equal(pos, j);
      transcript.add_query(pos, j, eq);
      bits.push_back(eq ? 1 : 0);
    }
    const auto declared = player.examine(pos, bits);
    ++flips;

    for (int j : player.working_set()) {
      if (j != pos && std::find(before.begin(), before.end(), j) == before.end()) {
        violation("working set gained " + std::to_string(j) + " which was neither stored nor examined");
      }
    }
    transcript.add_flip(pos, static_cast<int>(player.working_set().size()));

    for (auto [a, b] : declared) {
      const int i = std::min(a, b);
      const int j = std::max(a, b);
      if (i < 1 || j > len || i == j) violation("declared an ill-formed pair");
      if (removed[static_cast<std::size_t>(i)] || removed[static_cast<std::size_t>(j)]) {
        violation("declared a pair involving a removed card");
      }
      const auto v = hooks.output_value(i, j);
      if (!v) {
        result.status = DriveStatus::Rejected;
        result.rejected = PositionPair{i, j};
        return result;
      }
      transcript.add_output({i, j, *v});
      removed[static_cast<std::size_t>(i)] = 1;
      removed[static_cast<std::size_t>(j)] = 1;
      ++result.outputs;
    }
  }
  result.status = DriveStatus::Finished;
  return result;
}

PlayResult play_on_deck(BlindPlayer& player, const ValidInput& x,
                        std::optional<std::int64_t> flip_limit) {
  PlayResult r;
  DriveHooks hooks;
  hooks.equal = [&x](int i, int j) { return x.at(i) == x.at(j); };
  hooks.output_value = [&x](int i, int j) -> std::optional<int> {
    if (x.at(i) != x.at(j)) return std::nullopt;
    return x.at(i);
  };
  r.drive = drive_blind(player, x.n(), hooks, r.transcript, flip_limit);
  return r;
}

Transcript multi_pass_play(const ValidInput& x, const SpaceBudget& budget) {
  if (budget.capacity < 1) {
    throw std::invalid_argument("multi-pass play needs room for one index: S must be at least " +
                                std::to_string(budget.bits_per_index) + " bits, got " +
                                std::to_string(budget.space_bits));
  }
  MultiPassPlayer player(x.n(), budget.capacity);
  return play_on_deck(player, x).transcript;
}

std::int64_t multi_pass_time_bound(int n, const SpaceBudget& budget) {
  if (budget.capacity < 1) throw std::invalid_argument("capacity must be at least 1");
  const std::int64_t len = 2 * static_cast<std::int64_t>(n);
  const std::int64_t passes = (len + budget.capacity - 1) / budget.capacity;
  return passes * len;
}

Transcript perfect_memory_play(const ValidInput& x) {
  Transcript t;
  const int len = x.size();
  std::map<int, int> known;  // value -> position of a seen, unmatched card
  int next_unseen = 1;
  auto remembered = [&] { return static_cast<int>(known.size()); };

  auto output = [&](int a, int b) {
    t.add_output({std::min(a, b), std::max(a, b), x.at(a)});
    known.erase(x.at(a));
  };

  int pending_first = 0;  // first card of a move already known to match a seen card
  while (static_cast<int>(t.outputs().size()) < x.n()) {
    if (pending_first != 0) {
      // Previous move revealed a card whose partner we remember.
      const int a = pending_first;
      const int partner = known.at(x.at(a));
      pending_first = 0;
      t.add_flip(a, remembered());
      t.add_flip(partner, remembered());
      output(a, partner);
      continue;
    }
    if (next_unseen > len) break;
    const int a = next_unseen++;
    t.add_flip(a, remembered() + 1);
    if (auto it = known.find(x.at(a)); it != known.end()) {
      const int partner = it->second;
      t.add_flip(partner, remembered());
      output(a, partner);
      continue;
    }
    known.emplace(x.at(a), a);
    if (next_unseen > len) break;
    const int b = next_unseen++;
    if (x.at(b) == x.at(a)) {
      t.add_flip(b, remembered());
      output(a, b);
      continue;
    }
    if (known.count(x.at(b))) {
      t.add_flip(b, remembered() + 1);
      pending_first = b;
    } else {
      known.emplace(x.at(b), b);
      t.add_flip(b, remembered());
    }
  }
  return t;
}

bool space_audit(const Transcript& t, const SpaceBudget& budget) {
  if (t.empty()) return true;
  if (!t.tracks_working_set()) {
    throw std::invalid_argument("space audit needs working-set sizes on every flip");
  }
  return static_cast<std::int64_t>(t.max_working_set()) * budget.bits_per_index <=
         budget.space_bits;
}

}  // namespace memlab
