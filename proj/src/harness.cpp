#include "memlab/harness.hpp"

#include "memlab/adversary.hpp"
#include "memlab/parallel.hpp"
#include "memlab/rng.hpp"
#include "memlab/strategies.hpp"
#include "memlab/unique_pairs.hpp"
#include "memlab/ytail.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace memlab::harness {

const Row kPlayHeader{"n", "S", "s", "T", "passes", "correct", "strategy", "seed"};
const Row kTradeoffHeader{"n", "S", "s", "T", "passes", "queries", "correct", "strategy", "seed"};
const Row kTradeoffSummaryHeader{"n",     "S",    "s",  "T_worst",  "prev_T_worst", "time_bound",
                                 "ratio", "c_cal", "ok", "strategy", "seed",         "seeds"};
const Row kAdversaryHeader{"n",       "S",        "queries", "deletions", "vanishings", "lower_bound_ok",
                           "involution_ok", "correct", "strategy", "seed"};
const Row kLemmaYHeader{"estimate", "bound", "ok", "seed", "n", "r", "t", "trials", "stderr", "exact_tail"};
const Row kXyHeader{"estimate", "bound", "ok", "seed", "n", "R", "depth", "tree"};
const Row kLemma43Header{"estimate", "bound", "ok", "seed", "n", "R", "r", "t", "tree", "fraction"};
const Row kUniquePairsHeader{"estimate", "bound",          "ok",        "seed",       "n",
                             "trials",   "stderr", "binom_n_formula", "binom_2n_formula", "exact"};

std::string format_row(const Row& row) {
  std::string line;
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k) line += ',';
    line += row[k];
  }
  return line;
}

void write_csv(std::ostream& out, const Table& table) {
  out << format_row(table.header) << '\n';
  for (const Row& r : table.rows) out << format_row(r) << '\n';
}

std::string fmt(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf, end);
}

std::string fmt(bool b) { return b ? "true" : "false"; }

static std::string fmt(std::int64_t x) { return std::to_string(x); }
static std::string fmt(int x) { return std::to_string(x); }
static std::string fmt(std::uint64_t x) { return std::to_string(x); }

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& text, const std::string& what) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw std::invalid_argument("bad " + what + ": '" + text + "'");
  return value;
}

std::vector<int> capacities_for(int n) {
  std::vector<int> caps;
  for (int s = 1; s <= 2 * n; s *= 2) caps.push_back(s);
  return caps;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

SweepConfig parse_config(std::istream& in, const std::string& source) {
  SweepConfig cfg;
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError(source + ":" + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(std::string_view(raw).substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));

    std::vector<std::string> items;
    const bool is_list = !value.empty() && value.front() == '[';
    if (is_list) {
      if (value.back() != ']') fail("unterminated list");
      std::stringstream ss(value.substr(1, value.size() - 2));
      for (std::string item; std::getline(ss, item, ',');) {
        item = trim(item);
        if (item.empty()) fail("empty list item");
        items.push_back(item);
      }
    } else {
      if (value.empty()) fail("missing value for " + key);
      items.push_back(value);
    }
    auto ints = [&] {
      std::vector<int> out;
      try {
        for (const auto& it : items) out.push_back(parse_number<int>(it, key));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
      return out;
    };
    auto scalar = [&]() -> const std::string& {
      if (is_list) fail(key + " takes a single value");
      return items.front();
    };
    auto u64 = [&] {
      try {
        return parse_number<std::uint64_t>(scalar(), key);
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
      return std::uint64_t{0};
    };

    if (key == "n") cfg.n = ints();
    else if (key == "s") cfg.s = ints();
    else if (key == "S") cfg.space_bits = ints();
    else if (key == "seeds") cfg.seeds = static_cast<int>(u64());
    else if (key == "seed") cfg.seed = u64();
    else if (key == "strategy") cfg.strategy = items;
    else if (key == "out") cfg.out = scalar();
    else if (key == "cap_enum") cfg.cap_enum = u64();
    else if (key == "cap_tree") cfg.cap_tree = u64();
    else if (key == "jobs") cfg.jobs = static_cast<int>(u64());
    else fail("unknown key '" + key + "'");
  }
  if (!cfg.s.empty() && !cfg.space_bits.empty()) {
    throw ConfigError(source + ": give either s or S, not both");
  }
  for (int n : cfg.n) {
    if (n < 1) throw ConfigError(source + ": n must be at least 1");
  }
  if (cfg.seeds < 1) throw ConfigError(source + ": seeds must be at least 1");
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  return parse_config(in, path);
}

std::uint64_t cell_seed(std::uint64_t base, int n, int k) {
  return split_seed(split_seed(base, static_cast<std::uint64_t>(n)), static_cast<std::uint64_t>(k));
}

// ---------------------------------------------------------------------------
// Play and tradeoff

PlayOutput play(const std::string& strategy, int n, int R, int space_bits, std::uint64_t seed,
                const std::optional<ValidInput>& deck) {
  ValidInput x = [&] {
    if (deck) return *deck;
    Rng rng(seed);
    return generate_valid_input(n, R, rng);
  }();
  PlayOutput out;
  if (strategy == "perfect") {
    out.transcript = perfect_memory_play(x);
    const bool ok = verify_transcript(x, out.transcript).ok;
    out.summary = {fmt(x.n()), "na", "na", fmt(out.transcript.flips()), fmt(out.transcript.passes()), fmt(ok),
                   strategy, fmt(seed)};
    return out;
  }
  if (strategy != "multipass" && strategy != "multipass-shuffled") {
    throw std::invalid_argument("unknown strategy '" + strategy + "'");
  }
  const auto budget = SpaceBudget::from_bits(x.n(), space_bits);
  if (budget.capacity < 1) {
    throw std::invalid_argument("S=" + std::to_string(space_bits) + " stores no index; need S >= " +
                                std::to_string(budget.bits_per_index));
  }
  auto player = make_blind_player(strategy, x.n(), budget.capacity, split_seed(seed, 1));
  auto r = play_on_deck(*player, x);
  const bool ok = verify_transcript(x, r.transcript).ok;
  out.summary = {fmt(x.n()), fmt(space_bits), fmt(budget.capacity), fmt(r.transcript.flips()),
                 fmt(r.transcript.passes()), fmt(ok), strategy, fmt(seed)};
  out.transcript = std::move(r.transcript);
  return out;
}

Row tradeoff_row(const std::string& strategy, int n, int space_bits, std::uint64_t seed) {
  const auto budget = SpaceBudget::from_bits(n, space_bits);
  if (budget.capacity < 1) {
    return {fmt(n), fmt(space_bits), "0", "na", "na", "na", "skipped", strategy, fmt(seed)};
  }
  Rng rng(seed);
  const ValidInput x = generate_valid_input(n, n, rng);
  auto player = make_blind_player(strategy, n, budget.capacity, split_seed(seed, 1));
  const auto r = play_on_deck(*player, x);
  const bool ok = verify_transcript(x, r.transcript).ok;
  return {fmt(n),
          fmt(space_bits),
          fmt(budget.capacity),
          fmt(r.transcript.flips()),
          fmt(r.transcript.passes()),
          fmt(r.transcript.queries()),
          fmt(ok),
          strategy,
          fmt(seed)};
}

namespace {

std::vector<int> space_bits_for(const SweepConfig& cfg, int n) {
  std::vector<int> bits;
  if (!cfg.space_bits.empty()) return cfg.space_bits;
  const int bpi = bits_per_index(n);
  for (int s : cfg.s.empty() ? capacities_for(n) : cfg.s) bits.push_back(s * bpi);
  return bits;
}

struct CellStats {
  int n = 0;
  int space_bits = 0;
  int capacity = 0;
  std::int64_t t_worst = 0;
  bool all_correct = true;
  bool within_bound = true;
  bool skipped = false;
};

CellStats cell_stats(int n, int space_bits, const std::vector<Row>& runs) {
  CellStats c;
  c.n = n;
  c.space_bits = space_bits;
  const auto budget = SpaceBudget::from_bits(n, space_bits);
  c.capacity = budget.capacity;
  if (budget.capacity < 1) {
    c.skipped = true;
    return c;
  }
  const auto bound = multi_pass_time_bound(n, budget);
  for (const Row& r : runs) {
    const auto T = parse_number<std::int64_t>(r[3], "T");
    c.t_worst = std::max(c.t_worst, T);
    c.all_correct = c.all_correct && r[6] == "true";
    c.within_bound = c.within_bound && T <= bound;
  }
  return c;
}

double cell_ratio(const CellStats& c) {
  return static_cast<double>(c.space_bits) * static_cast<double>(c.t_worst) /
         (static_cast<double>(c.n) * c.n * bits_per_index(c.n));
}

Row summary_row(const CellStats& c, std::optional<std::int64_t> prev, double c_cal, const std::string& strategy,
                std::uint64_t base_seed, int seeds) {
  if (c.skipped) {
    return {fmt(c.n), fmt(c.space_bits), "0", "na", "na", "na", "na", fmt(c_cal), "skipped", strategy,
            fmt(base_seed), fmt(seeds)};
  }
  const auto bound = multi_pass_time_bound(c.n, SpaceBudget::from_bits(c.n, c.space_bits));
  const double ratio = cell_ratio(c);
  const bool monotone = !prev || c.t_worst <= *prev;
  const bool ok = c.all_correct && c.within_bound && monotone && ratio <= 2 * c_cal;
  return {fmt(c.n),
          fmt(c.space_bits),
          fmt(c.capacity),
          fmt(c.t_worst),
          prev ? fmt(*prev) : "na",
          fmt(bound),
          fmt(ratio),
          fmt(c_cal),
          fmt(ok),
          strategy,
          fmt(base_seed),
          fmt(seeds)};
}

std::vector<Row> cell_runs(const std::string& strategy, int n, int space_bits, std::uint64_t base_seed,
                           int seeds, int jobs) {
  return parallel_map(static_cast<std::size_t>(seeds), jobs, [&](std::size_t k) {
    return tradeoff_row(strategy, n, space_bits, cell_seed(base_seed, n, static_cast<int>(k)));
  });
}

}  // namespace

TradeoffResult tradeoff_sweep(const SweepConfig& cfg) {
  if (cfg.n.empty()) throw ConfigError("tradeoff sweep needs at least one n");
  TradeoffResult res;
  res.runs.header = kTradeoffHeader;
  res.summary.header = kTradeoffSummaryHeader;

  struct Job {
    std::string strategy;
    int n;
    int space_bits;
    int k;
  };
  std::vector<Job> jobs;
  for (const auto& strategy : cfg.strategy) {
    for (int n : cfg.n) {
      for (int bits : space_bits_for(cfg, n)) {
        for (int k = 0; k < cfg.seeds; ++k) jobs.push_back({strategy, n, bits, k});
      }
    }
  }
  res.runs.rows = parallel_map(jobs.size(), cfg.jobs, [&](std::size_t j) {
    const Job& job = jobs[j];
    return tradeoff_row(job.strategy, job.n, job.space_bits, cell_seed(cfg.seed, job.n, job.k));
  });

  // Group rows into cells in config order.
  std::vector<std::pair<std::string, CellStats>> cells;
  for (std::size_t j = 0; j < jobs.size(); j += static_cast<std::size_t>(cfg.seeds)) {
    std::vector<Row> runs(res.runs.rows.begin() + static_cast<std::ptrdiff_t>(j),
                          res.runs.rows.begin() + static_cast<std::ptrdiff_t>(j + static_cast<std::size_t>(cfg.seeds)));
    cells.emplace_back(jobs[j].strategy, cell_stats(jobs[j].n, jobs[j].space_bits, runs));
  }

  const int n_min = *std::min_element(cfg.n.begin(), cfg.n.end());
  for (const auto& [strategy, c] : cells) {
    if (c.n == n_min && !c.skipped) res.c_cal = std::max(res.c_cal, cell_ratio(c));
  }

  res.ok = true;
  std::map<std::pair<std::string, int>, std::int64_t> prev_worst;
  for (const auto& [strategy, c] : cells) {
    std::optional<std::int64_t> prev;
    const auto key = std::make_pair(strategy, c.n);
    if (auto it = prev_worst.find(key); it != prev_worst.end()) prev = it->second;
    Row row = summary_row(c, prev, res.c_cal, strategy, cfg.seed, cfg.seeds);
    if (!c.skipped) prev_worst[key] = c.t_worst;
    res.ok = res.ok && row[8] != "false";
    res.summary.rows.push_back(std::move(row));
  }
  return res;
}

Row tradeoff_summary_row(const std::string& strategy, int n, int space_bits, std::uint64_t base_seed, int seeds,
                         double c_cal, std::optional<std::int64_t> prev_t_worst) {
  const auto runs = cell_runs(strategy, n, space_bits, base_seed, seeds, 1);
  return summary_row(cell_stats(n, space_bits, runs), prev_t_worst, c_cal, strategy, base_seed, seeds);
}

// ---------------------------------------------------------------------------
// Adversary

Row adversary_row(const std::string& strategy, int n, int space_bits, std::uint64_t seed, bool audit) {
  const int bpi = bits_per_index(n);
  if (space_bits < 0) {
    Rng rng(split_seed(seed, 0));
    space_bits = (1 + static_cast<int>(uniform_below(rng, 2 * static_cast<std::uint64_t>(n)))) * bpi;
  }
  const auto budget = SpaceBudget::from_bits(n, space_bits);
  if (budget.capacity < 1 && strategy != "guess") {
    return {fmt(n), fmt(space_bits), "na", "na", "na", "na", "na", "skipped", strategy, fmt(seed)};
  }
  auto player = make_blind_player(strategy, n, budget.capacity, split_seed(seed, 1));
  const auto run = adversarial_play(*player, n);
  const std::int64_t queries = static_cast<std::int64_t>(run.log.queries.size());
  const std::int64_t need = static_cast<std::int64_t>(n) * (n - 1);
  const bool lower_bound_ok = 2 * queries >= need && run.log.deletions + run.log.vanishings == need;
  std::string involution = "na";
  if (audit) {
    if (run.correct) {
      auto graph = run.graph;
      involution = fmt(involution_audit(n, run.log, graph.perfect_matching()).ok());
    } else {
      involution = "false";
    }
  }
  return {fmt(n),
          fmt(space_bits),
          fmt(queries),
          fmt(run.log.deletions),
          fmt(run.log.vanishings),
          fmt(lower_bound_ok),
          involution,
          fmt(run.correct),
          strategy,
          fmt(seed)};
}

Table adversary_sweep(const SweepConfig& cfg, bool audit) {
  if (cfg.n.empty()) throw ConfigError("adversary sweep needs at least one n");
  struct Job {
    std::string strategy;
    int n;
    int space_bits;  // -1: drawn from the seed
    int k;
  };
  std::vector<Job> jobs;
  for (int n : cfg.n) {
    std::vector<int> bits;
    if (!cfg.space_bits.empty()) bits = cfg.space_bits;
    for (int s : cfg.s) bits.push_back(s * bits_per_index(n));
    if (bits.empty()) bits.push_back(-1);
    for (const auto& strategy : cfg.strategy) {
      for (int b : bits) {
        for (int k = 0; k < cfg.seeds; ++k) jobs.push_back({strategy, n, b, k});
      }
    }
  }
  Table t;
  t.header = kAdversaryHeader;
  t.rows = parallel_map(jobs.size(), cfg.jobs, [&](std::size_t j) {
    const Job& job = jobs[j];
    return adversary_row(job.strategy, job.n, job.space_bits, cell_seed(cfg.seed, job.n, job.k), audit);
  });
  return t;
}

// ---------------------------------------------------------------------------
// Analysis rows

Row lemma_y_row(int n, int r, int t, std::int64_t trials, std::uint64_t seed, int jobs) {
  if (r < 0) r = y_critical_r(n, t);
  const double bound = y_tail_bound(n, r, t);
  const auto est = y_tail_monte_carlo({n, r, t, trials, seed}, bound, jobs);
  const bool ok = est.estimate <= bound + 3 * est.sigma;
  return {fmt(est.estimate), fmt(bound), fmt(ok), fmt(seed), fmt(n), fmt(r), fmt(t), fmt(trials), fmt(est.sigma),
          fmt(y_exact_tail(n, r, t).convert_to<double>())};
}

DecisionTree build_tree(const std::string& tree, int n, int R, int depth, int t, std::uint64_t seed,
                        std::uint64_t cap_tree) {
  if (tree == "random") {
    Rng rng(seed);
    return random_tree(n, R, depth, rng);
  }
  auto suffix = [&](const std::string& prefix) -> std::optional<int> {
    if (tree.rfind(prefix, 0) != 0) return std::nullopt;
    return parse_number<int>(tree.substr(prefix.size()), "tree parameter");
  };
  if (auto s = suffix("multipass-s")) {
    MultiPassPlayer player(n, *s);
    return compile_prefix_tree(player, n, R, depth, cap_tree);
  }
  if (auto k = suffix("guess-k")) return guessing_tree(n, R, depth, t, *k);
  throw std::invalid_argument("unknown tree '" + tree + "'");
}

Row xy_row(int n, int R, int depth, const std::string& tree, std::uint64_t seed, std::uint64_t cap_enum,
           std::uint64_t cap_tree) {
  const auto dt = build_tree(tree, n, R, depth, 0, seed, cap_tree);
  const auto x = x_exact_distribution(dt, cap_enum);
  const auto y = y_exact_distribution(n, depth);
  Rational worst = 0;
  for (std::size_t u = 0; u < std::max(x.size(), y.size()); ++u) {
    const Rational a = u < x.size() ? x[u] : Rational(0);
    const Rational b = u < y.size() ? y[u] : Rational(0);
    worst = std::max(worst, a > b ? Rational(a - b) : Rational(b - a));
  }
  return {fmt(worst.convert_to<double>()), "0", fmt(x == y), fmt(seed), fmt(n), fmt(R), fmt(depth), tree};
}

Row lemma43_row(int n, int R, int r, int t, const std::string& tree, std::uint64_t seed, std::uint64_t cap_tree) {
  const auto dt = build_tree(tree, n, R, r, t, seed, cap_tree);
  const auto res = lemma43_check(dt, t);
  return {fmt(res.fraction.convert_to<double>()), fmt(res.bound), fmt(res.ok), fmt(seed), fmt(n), fmt(R),
          fmt(r), fmt(t), tree, res.fraction.str()};
}

Row unique_pairs_row(int n, std::int64_t trials, std::uint64_t seed, int jobs, std::uint64_t cap_enum) {
  const auto est = unique_pairs_expected(n, trials, seed, jobs, cap_enum);
  return {fmt(est.estimate), fmt(est.bound),    fmt(est.ok),       fmt(seed),
          fmt(n),            fmt(trials),       fmt(est.std_error), fmt(est.binom_n),
          fmt(est.binom_2n), est.exact ? est.exact->str() : "na"};
}

// ---------------------------------------------------------------------------
// CSV reading, replay, report

CsvFile read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvParseError("cannot open " + path);
  CsvFile f;
  f.path = path;
  std::string line;
  int line_no = 0;
  auto split = [](const std::string& s) {
    Row out;
    std::size_t start = 0;
    while (true) {
      const auto comma = s.find(',', start);
      out.push_back(s.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.find('"') != std::string::npos) {
      throw CsvParseError(path + ":" + std::to_string(line_no) + ": quoted fields are not supported");
    }
    Row fields = split(line);
    if (f.header.empty()) {
      f.header = std::move(fields);
      continue;
    }
    if (fields.size() != f.header.size()) {
      throw CsvParseError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(f.header.size()) +
                          " fields, got " + std::to_string(fields.size()));
    }
    f.rows.push_back(std::move(fields));
    f.lines.push_back(line_no);
  }
  return f;
}

namespace {

class Fields {
 public:
  Fields(const Row& header, const Row& row) {
    for (std::size_t k = 0; k < header.size(); ++k) map_[header[k]] = row[k];
  }
  const std::string& str(const std::string& key) const { return map_.at(key); }
  int i(const std::string& key) const { return parse_number<int>(str(key), key); }
  std::int64_t i64(const std::string& key) const { return parse_number<std::int64_t>(str(key), key); }
  std::uint64_t u64(const std::string& key) const { return parse_number<std::uint64_t>(str(key), key); }
  double d(const std::string& key) const { return parse_number<double>(str(key), key); }

 private:
  std::map<std::string, std::string> map_;
};

}  // namespace

ReplayResult replay(const std::string& path, int line, int jobs, std::uint64_t cap_enum, std::uint64_t cap_tree) {
  const CsvFile f = read_csv(path);
  const auto it = std::find(f.lines.begin(), f.lines.end(), line);
  if (it == f.lines.end()) {
    throw std::invalid_argument(path + ": line " + std::to_string(line) + " is not a data row");
  }
  const Row& row = f.rows[static_cast<std::size_t>(it - f.lines.begin())];
  const Fields v(f.header, row);

  Row again;
  const Row& h = f.header;
  if (h == kPlayHeader) {
    const std::string strategy = v.str("strategy");
    const int bits = strategy == "perfect" ? 0 : v.i("S");
    // Replays of --deck runs need the deck file; this covers generated decks with R = n.
    again = play(strategy, v.i("n"), v.i("n"), bits, v.u64("seed")).summary;
  } else if (h == kTradeoffHeader) {
    again = tradeoff_row(v.str("strategy"), v.i("n"), v.i("S"), v.u64("seed"));
  } else if (h == kTradeoffSummaryHeader) {
    std::optional<std::int64_t> prev;
    if (v.str("prev_T_worst") != "na") prev = v.i64("prev_T_worst");
    again = tradeoff_summary_row(v.str("strategy"), v.i("n"), v.i("S"), v.u64("seed"), v.i("seeds"), v.d("c_cal"),
                                 prev);
  } else if (h == kAdversaryHeader) {
    again = adversary_row(v.str("strategy"), v.i("n"), v.i("S"), v.u64("seed"), v.str("involution_ok") != "na");
  } else if (h == kLemmaYHeader) {
    again = lemma_y_row(v.i("n"), v.i("r"), v.i("t"), v.i64("trials"), v.u64("seed"), jobs);
  } else if (h == kXyHeader) {
    again = xy_row(v.i("n"), v.i("R"), v.i("depth"), v.str("tree"), v.u64("seed"), cap_enum, cap_tree);
  } else if (h == kLemma43Header) {
    again = lemma43_row(v.i("n"), v.i("R"), v.i("r"), v.i("t"), v.str("tree"), v.u64("seed"), cap_tree);
  } else if (h == kUniquePairsHeader) {
    again = unique_pairs_row(v.i("n"), v.i64("trials"), v.u64("seed"), jobs, cap_enum);
  } else {
    throw std::invalid_argument(path + ": unrecognised CSV header '" + format_row(h) + "'");
  }
  ReplayResult res;
  res.original = format_row(row);
  res.regenerated = format_row(again);
  res.identical = res.original == res.regenerated;
  return res;
}

namespace {

std::string kind_of(const Row& header) {
  static const std::vector<std::pair<const Row*, std::string>> kinds{
      {&kPlayHeader, "play"},         {&kTradeoffHeader, "tradeoff"},   {&kTradeoffSummaryHeader, "tradeoff-summary"},
      {&kAdversaryHeader, "adversary"}, {&kLemmaYHeader, "lemma-y"},    {&kXyHeader, "xy-check"},
      {&kLemma43Header, "lemma43"},   {&kUniquePairsHeader, "unique-pairs"}};
  for (const auto& [h, name] : kinds) {
    if (*h == header) return name;
  }
  return "other";
}

}  // namespace

ReportResult report(const std::vector<std::string>& paths) {
  static const std::set<std::string> verdicts{"ok", "correct", "lower_bound_ok", "involution_ok"};
  ReportResult res;
  res.tidy.header = {"file", "line", "column", "value"};

  struct KindTotals {
    int files = 0;
    int rows = 0;
    int failures = 0;
    int skipped = 0;
  };
  std::map<std::string, KindTotals> totals;
  std::vector<std::string> failing;

  for (const auto& path : paths) {
    const CsvFile f = read_csv(path);
    auto& kt = totals[kind_of(f.header)];
    ++kt.files;
    for (std::size_t r = 0; r < f.rows.size(); ++r) {
      const Row& row = f.rows[r];
      bool failed = false;
      bool skipped = false;
      for (std::size_t c = 0; c < row.size(); ++c) {
        res.tidy.rows.push_back({path, fmt(f.lines[r]), f.header[c], row[c]});
        if (verdicts.count(f.header[c])) {
          failed = failed || row[c] == "false";
          skipped = skipped || row[c] == "skipped";
        }
      }
      ++kt.rows;
      ++res.rows;
      if (skipped) ++kt.skipped;
      if (failed) {
        ++kt.failures;
        ++res.failures;
        failing.push_back(path + ":" + std::to_string(f.lines[r]) + ": " + format_row(row));
      }
    }
  }

  std::ostringstream out;
  out << "kind              files   rows  failed  skipped\n";
  for (const auto& [kind, kt] : totals) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-16s %6d %6d %7d %8d\n", kind.c_str(), kt.files, kt.rows, kt.failures,
                  kt.skipped);
    out << buf;
  }
  out << "total: " << res.rows << " rows, " << res.failures << " failed\n";
  for (const auto& f : failing) out << "FAILED " << f << '\n';
  res.summary = out.str();
  return res;
}

}  // namespace memlab::harness
