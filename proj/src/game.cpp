#include "memlab/game.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace memlab {

void GameParams::validate() const {
  if (n < 1) throw std::invalid_argument("n must be at least 1, got " + std::to_string(n));
  if (R < n) {
    throw std::invalid_argument("R must be at least n (no valid deck has n=" + std::to_string(n) +
                                " distinct values in [" + std::to_string(R) + "])");
  }
}

std::string to_string(const MatchTriple& m) {
  return "(" + std::to_string(m.i) + "," + std::to_string(m.j) + "," + std::to_string(m.v) + ")";
}

std::optional<std::string> deck_problem(std::span<const int> values) {
  if (values.empty() || values.size() % 2 != 0) {
    return "deck length must be a positive even number, got " + std::to_string(values.size());
  }
  std::map<int, int> multiplicity;
  for (int v : values) ++multiplicity[v];
  std::ostringstream bad;
  for (auto [v, count] : multiplicity) {
    if (v < 1) bad << " value " << v << " is not positive;";
    if (count != 2) bad << " value " << v << " occurs " << count << " time" << (count == 1 ? "" : "s") << ";";
  }
  if (bad.str().empty()) return std::nullopt;
  std::string text = bad.str();
  text.pop_back();
  return "invalid deck:" + text;
}

ValidInput::ValidInput(std::vector<int> values) : values_(std::move(values)) {
  if (auto problem = deck_problem(values_)) throw InvalidDeck(*problem);
}

int ValidInput::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

std::string to_string(const ValidInput& x) {
  std::string out;
  for (int v : x.values()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

ValidInput generate_valid_input(int n, int R, Rng& rng) {
  GameParams{n, R, 0}.validate();
  std::vector<int> pool(static_cast<std::size_t>(R));
  std::iota(pool.begin(), pool.end(), 1);
  // Partial Fisher-Yates: the first n slots become a uniform n-subset.
  for (int k = 0; k < n; ++k) {
    auto pick = k + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(R - k)));
    std::swap(pool[k], pool[pick]);
  }
  std::vector<int> deck;
  deck.reserve(2 * static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    deck.push_back(pool[k]);
    deck.push_back(pool[k]);
  }
  shuffle(std::span<int>(deck), rng);
  return ValidInput(std::move(deck));
}

ValidInput generate_valid_input(const GameParams& params) {
  params.validate();
  Rng rng(params.seed);
  return generate_valid_input(params.n, params.R, rng);
}

BigInt count_valid_inputs(int n, int R) {
  GameParams{n, R, 0}.validate();
  BigInt subsets = 1;
  for (int k = 0; k < n; ++k) subsets = subsets * (R - k) / (k + 1);
  BigInt arrangements = 1;
  for (int k = 2; k <= 2 * n; ++k) arrangements *= k;
  arrangements >>= n;
  return subsets * arrangements;
}

void for_each_valid_input(int n, int R, std::uint64_t cap,
                          const std::function<void(const ValidInput&)>& visit) {
  BigInt total = count_valid_inputs(n, R);
  if (total > cap) {
    throw CapExceeded("enumeration of valid decks for n=" + std::to_string(n) +
                          ", R=" + std::to_string(R) + " would yield " + total.str() +
                          " decks, above the cap of " + std::to_string(cap),
                      total);
  }
  const int len = 2 * n;
  std::vector<int> deck(static_cast<std::size_t>(len), 0);
  std::vector<int> count(static_cast<std::size_t>(R) + 1, 0);
  int distinct = 0;

  // Any prefix with every count <= 2 and at most n distinct values extends to
  // a valid deck, so the search never dead-ends.
  auto recurse = [&](auto&& self, int pos) -> void {
    if (pos == len) {
      visit(ValidInput(deck, ValidInput::Trusted{}));
      return;
    }
    for (int v = 1; v <= R; ++v) {
      int& c = count[static_cast<std::size_t>(v)];
      if (c == 2) continue;
      if (c == 0 && distinct == n) continue;
      if (c == 0) ++distinct;
      ++c;
      deck[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1);
      --c;
      if (c == 0) --distinct;
    }
  };
  recurse(recurse, 0);
}

std::vector<ValidInput> enumerate_valid_inputs(int n, int R, std::uint64_t cap) {
  std::vector<ValidInput> out;
  for_each_valid_input(n, R, cap, [&](const ValidInput& x) { out.push_back(x); });
  return out;
}

std::vector<MatchTriple> matches_of(const ValidInput& x) {
  std::map<int, int> first_seen;
  std::vector<MatchTriple> out;
  out.reserve(static_cast<std::size_t>(x.n()));
  for (int pos = 1; pos <= x.size(); ++pos) {
    int v = x.at(pos);
    auto [it, fresh] = first_seen.emplace(v, pos);
    if (!fresh) out.push_back({it->second, pos, v});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MatchTriple> matches_of(std::span<const int> values) {
  return matches_of(ValidInput(std::vector<int>(values.begin(), values.end())));
}

// ---------------------------------------------------------------------------

std::string_view event_name(EventKind kind) {
  switch (kind) {
    case EventKind::Flip: return "flip";
    case EventKind::PairQuery: return "query";
    case EventKind::Output: return "output";
    case EventKind::Deletion: return "delete";
    case EventKind::Vanish: return "vanish";
    case EventKind::PassBoundary: return "pass";
  }
  return "?";
}

void Transcript::add_flip(int position, std::optional<int> working_set_size) {
  events_.push_back({EventKind::Flip, position, working_set_size.value_or(-1), 0});
  ++flips_;
  if (working_set_size) {
    max_working_set_ = std::max(max_working_set_, *working_set_size);
  } else {
    ++untracked_flips_;
  }
}

void Transcript::add_query(int i, int j, bool answer) {
  events_.push_back({EventKind::PairQuery, i, j, answer ? 1 : 0});
  ++queries_;
}

void Transcript::add_output(const MatchTriple& m) {
  if (!output_set_.insert(m).second) {
    throw std::logic_error("transcript already contains output " + to_string(m));
  }
  outputs_.push_back(m);
  events_.push_back({EventKind::Output, m.i, m.j, m.v});
}

void Transcript::add_deletion(int left, int right) {
  events_.push_back({EventKind::Deletion, left, right, 0});
}

void Transcript::add_vanish(int left, int right) {
  events_.push_back({EventKind::Vanish, left, right, 0});
}

void Transcript::add_pass(int index) {
  events_.push_back({EventKind::PassBoundary, index, 0, 0});
  ++passes_;
}

void Transcript::write_csv(std::ostream& out) const {
  out << "step,event,arg1,arg2,arg3\n";
  std::size_t step = 0;
  for (const Event& e : events_) {
    out << ++step << ',' << event_name(e.kind) << ',' << e.arg1 << ',' << e.arg2 << ','
        << e.arg3 << '\n';
  }
}

Transcript Transcript::read_csv(std::istream& in) {
  Transcript t;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("transcript CSV line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != "step,event,arg1,arg2,arg3") fail("unexpected header '" + line + "'");
      continue;
    }
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    long long step = 0;
    std::string name;
    int a1 = 0, a2 = 0, a3 = 0;
    if (!(fields >> step >> name >> a1 >> a2 >> a3)) fail("expected 5 fields");
    if (name == "flip") {
      t.add_flip(a1, a2 < 0 ? std::nullopt : std::optional<int>(a2));
    } else if (name == "query") {
      t.add_query(a1, a2, a3 != 0);
    } else if (name == "output") {
      t.add_output({a1, a2, a3});
    } else if (name == "delete") {
      t.add_deletion(a1, a2);
    } else if (name == "vanish") {
      t.add_vanish(a1, a2);
    } else if (name == "pass") {
      t.add_pass(a1);
    } else {
      fail("unknown event '" + name + "'");
    }
  }
  return t;
}

std::string VerificationReport::describe() const {
  std::ostringstream out;
  out << (ok ? "pass" : "fail") << ": flips=" << flips << " queries=" << queries;
  for (const auto& m : missing) out << " missing " << to_string(m);
  for (const auto& m : unexpected) out << " unexpected " << to_string(m);
  return out.str();
}

VerificationReport verify_transcript(const ValidInput& x, const Transcript& t) {
  VerificationReport report;
  report.flips = t.flips();
  report.queries = t.queries();
  const auto expected = matches_of(x);
  std::vector<MatchTriple> produced = t.outputs();
  std::sort(produced.begin(), produced.end());
  std::set_difference(expected.begin(), expected.end(), produced.begin(), produced.end(),
                      std::back_inserter(report.missing));
  std::set_difference(produced.begin(), produced.end(), expected.begin(), expected.end(),
                      std::back_inserter(report.unexpected));
  report.ok = report.missing.empty() && report.unexpected.empty();
  return report;
}

// ---------------------------------------------------------------------------

void write_decks(std::ostream& out, int n, int R, std::span<const ValidInput> decks) {
  out << n << ' ' << R << '\n';
  for (const auto& x : decks) out << to_string(x) << '\n';
}

DeckFile read_decks(std::istream& in) {
  DeckFile file;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("deck file line " + std::to_string(line_no) + ": " + why);
  };
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    if (!header) {
      if (!(fields >> file.n >> file.R)) fail("expected header 'n R'");
      GameParams{file.n, file.R, 0}.validate();
      header = true;
      continue;
    }
    std::vector<int> values;
    int v = 0;
    while (fields >> v) values.push_back(v);
    if (!fields.eof()) fail("non-integer entry");
    if (static_cast<int>(values.size()) != 2 * file.n) {
      fail("expected " + std::to_string(2 * file.n) + " values, got " +
           std::to_string(values.size()));
    }
    for (int value : values) {
      if (value < 1 || value > file.R) fail("value " + std::to_string(value) + " outside [1, R]");
    }
    try {
      file.decks.emplace_back(std::move(values));
    } catch (const InvalidDeck& e) {
      fail(e.what());
    }
  }
  if (!header) throw std::runtime_error("deck file is empty");
  return file;
}

}  // namespace memlab
