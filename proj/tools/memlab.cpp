// memlab: command-line front end for the experiments.
//
// Exit status: 0 when every row passes, 1 when some row failed its check,
// 2 on usage or input errors.

#include "memlab/harness.hpp"
#include "memlab/parallel.hpp"
#include "memlab/rng.hpp"
#include "memlab/strategies.hpp"
#include "memlab/ytail.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

namespace h = memlab::harness;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  int jobs = 0;
  std::uint64_t cap_enum = memlab::kDefaultEnumerationCap;
  std::uint64_t cap_tree = memlab::kDefaultTreeCap;
};

std::uint64_t env_seed() {
  if (const char* s = std::getenv("MEMLAB_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      std::cerr << "memlab: ignoring MEMLAB_SEED='" << s << "'\n";
    }
  }
  return 1;
}

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int emit(const Globals& g, const h::Table& table) {
  Sink sink(g.out);
  h::write_csv(sink.stream(), table);
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto& col = table.header[c];
      if ((col == "ok" || col == "correct" || col == "lower_bound_ok" || col == "involution_ok") &&
          row[c] == "false") {
        return 1;
      }
    }
  }
  return 0;
}

std::vector<int> powers_of_two_up_to(int limit) {
  std::vector<int> v;
  for (int s = 1; s <= limit; s *= 2) v.push_back(s);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"memlab: memory-game strategies, the query adversary and tail-bound checks"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  g.seed = env_seed();
  app.add_option("--seed", g.seed, "Base seed (default: $MEMLAB_SEED, else 1)");
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--jobs", g.jobs, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--cap-enum", g.cap_enum, "Refuse to enumerate more decks than this")->capture_default_str();
  app.add_option("--cap-tree", g.cap_tree, "Refuse to build trees with more internal nodes than this")
      ->capture_default_str();

  int rc = 0;

  // play ------------------------------------------------------------------
  auto* play = app.add_subcommand("play", "Play one deck; transcript CSV plus an n,S,s,T,passes,correct summary");
  std::string play_strategy = "multipass";
  int play_n = 8, play_bits = 0, play_R = 0;
  std::string play_deck;
  play->add_option("--strategy", play_strategy)->check(CLI::IsMember({"multipass", "multipass-shuffled", "perfect"}))
      ->capture_default_str();
  play->add_option("--n", play_n, "Number of pairs")->check(CLI::PositiveNumber)->capture_default_str();
  play->add_option("--space-bits", play_bits, "Memory S in bits (multipass strategies)");
  play->add_option("--R", play_R, "Value range (default: n)");
  play->add_option("--deck", play_deck, "Play the first deck of this file instead of a generated one")
      ->check(CLI::ExistingFile);
  play->callback([&] {
    std::optional<memlab::ValidInput> deck;
    if (!play_deck.empty()) {
      std::ifstream in(play_deck);
      auto file = memlab::read_decks(in);
      if (file.decks.empty()) throw std::runtime_error(play_deck + " holds no decks");
      deck = file.decks.front();
      play_n = file.n;
      play_R = file.R;
    }
    if (play_strategy != "perfect" && play_bits == 0) throw CLI::ValidationError("--space-bits is required");
    const auto out = h::play(play_strategy, play_n, play_R ? play_R : play_n, play_bits, g.seed, deck);
    if (g.out.empty()) {
      out.transcript.write_csv(std::cout);
      std::cerr << h::format_row(h::kPlayHeader) << '\n' << h::format_row(out.summary) << '\n';
    } else {
      Sink sink(g.out);
      out.transcript.write_csv(sink.stream());
      std::cout << h::format_row(h::kPlayHeader) << '\n' << h::format_row(out.summary) << '\n';
    }
    rc = out.summary[5] == "true" ? 0 : 1;
  });

  // adversary ---------------------------------------------------------------
  auto* adv = app.add_subcommand("adversary", "Play strategies against the query adversary");
  std::vector<std::string> adv_strategy{"multipass"};
  std::vector<int> adv_n{8}, adv_bits;
  int adv_seeds = 1;
  bool adv_audit = false;
  adv->add_option("--strategy", adv_strategy, "multipass, multipass-shuffled or guess")->delimiter(',')
      ->capture_default_str();
  adv->add_option("--n", adv_n, "Pair counts, comma separated")->delimiter(',')->capture_default_str();
  adv->add_option("--space-bits", adv_bits, "Memory S in bits (default: drawn per seed)")->delimiter(',');
  adv->add_option("--seeds", adv_seeds, "Runs per cell")->check(CLI::PositiveNumber)->capture_default_str();
  adv->add_flag("--audit", adv_audit, "Run the involution audit on every finished game");
  adv->callback([&] {
    h::SweepConfig cfg;
    cfg.n = adv_n;
    cfg.space_bits = adv_bits;
    cfg.strategy = adv_strategy;
    cfg.seeds = adv_seeds;
    cfg.seed = g.seed;
    cfg.jobs = g.jobs;
    rc = emit(g, h::adversary_sweep(cfg, adv_audit));
  });

  // tradeoff ----------------------------------------------------------------
  auto* trade = app.add_subcommand("tradeoff", "Sweep (n, S) and check the S*T tradeoff");
  std::string trade_config, trade_summary;
  std::vector<int> trade_n, trade_s, trade_bits;
  std::vector<std::string> trade_strategy;
  int trade_seeds = 0;
  trade->add_option("--config", trade_config, "key = value config file")->check(CLI::ExistingFile);
  trade->add_option("--n", trade_n, "Pair counts")->delimiter(',');
  trade->add_option("--s", trade_s, "Capacities in stored indices (default 1,2,4,...,2n)")->delimiter(',');
  trade->add_option("--space-bits", trade_bits, "Memory sizes in bits")->delimiter(',');
  trade->add_option("--strategy", trade_strategy, "multipass or multipass-shuffled")->delimiter(',');
  trade->add_option("--seeds", trade_seeds, "Decks per cell (default 100)");
  trade->add_option("--summary", trade_summary, "Write per-cell summary CSV here (default: stderr)");
  trade->callback([&] {
    h::SweepConfig cfg = trade_config.empty() ? h::SweepConfig{} : h::load_config(trade_config);
    if (!trade_n.empty()) cfg.n = trade_n;
    if (!trade_s.empty()) cfg.s = trade_s;
    if (!trade_bits.empty()) cfg.space_bits = trade_bits;
    if (!trade_strategy.empty()) cfg.strategy = trade_strategy;
    if (trade_seeds > 0) cfg.seeds = trade_seeds;
    // An explicit --seed beats the config file.
    if (trade_config.empty() || !app.get_option("--seed")->empty()) cfg.seed = g.seed;
    if (!app.get_option("--jobs")->empty()) cfg.jobs = g.jobs;
    if (!g.out.empty()) cfg.out = g.out;
    if (cfg.n.empty()) throw CLI::ValidationError("tradeoff needs --n or a config with n");
    const auto res = h::tradeoff_sweep(cfg);
    Sink sink(cfg.out);
    h::write_csv(sink.stream(), res.runs);
    if (trade_summary.empty()) {
      h::write_csv(std::cerr, res.summary);
    } else {
      Sink s(trade_summary);
      h::write_csv(s.stream(), res.summary);
    }
    rc = res.ok ? 0 : 1;
  });

  // lemma-y -----------------------------------------------------------------
  auto* ly = app.add_subcommand("lemma-y", "Monte Carlo tail of Y against its bound");
  std::vector<int> ly_n{100}, ly_t{2};
  int ly_r = -1;
  std::int64_t ly_trials = 100000;
  ly->add_option("--n", ly_n, "Pair counts")->delimiter(',')->capture_default_str();
  ly->add_option("--t", ly_t, "Thresholds")->delimiter(',')->capture_default_str();
  ly->add_option("--r", ly_r, "Sample size (default: floor((2/e) sqrt(nt)))");
  ly->add_option("--trials", ly_trials)->check(CLI::PositiveNumber)->capture_default_str();
  ly->callback([&] {
    h::Table t{h::kLemmaYHeader, {}};
    std::uint64_t cell = 0;
    for (int n : ly_n) {
      for (int tt : ly_t) {
        t.rows.push_back(h::lemma_y_row(n, ly_r, tt, ly_trials, memlab::split_seed(g.seed, cell++), g.jobs));
      }
    }
    rc = emit(g, t);
  });

  // xy-check ----------------------------------------------------------------
  auto* xy = app.add_subcommand("xy-check", "Exact law of X along tree paths against the law of Y");
  int xy_n = 3, xy_R = 4, xy_trees = 50, xy_depth = 0;
  xy->add_option("--n", xy_n)->check(CLI::PositiveNumber)->capture_default_str();
  xy->add_option("--R", xy_R)->check(CLI::PositiveNumber)->capture_default_str();
  xy->add_option("--trees", xy_trees, "Random trees")->check(CLI::NonNegativeNumber)->capture_default_str();
  xy->add_option("--depth", xy_depth, "Tree depth (default: cycle through 1..min(4, 2n))");
  xy->callback([&] {
    h::Table t{h::kXyHeader, {}};
    const int max_depth = std::min(4, 2 * xy_n);
    for (int k = 0; k < xy_trees; ++k) {
      const int depth = xy_depth > 0 ? xy_depth : 1 + k % max_depth;
      t.rows.push_back(h::xy_row(xy_n, xy_R, depth, "random", memlab::split_seed(g.seed, static_cast<std::uint64_t>(k)),
                                 g.cap_enum, g.cap_tree));
    }
    for (int s : powers_of_two_up_to(2 * xy_n)) {
      for (int depth = 1; depth <= max_depth; ++depth) {
        if (xy_depth > 0 && depth != xy_depth) continue;
        t.rows.push_back(h::xy_row(xy_n, xy_R, depth, "multipass-s" + std::to_string(s), g.seed, g.cap_enum,
                                   g.cap_tree));
      }
    }
    rc = emit(g, t);
  });

  // lemma43 -----------------------------------------------------------------
  auto* l43 = app.add_subcommand("lemma43", "Exact fraction of decks on which a shallow tree is productive");
  int l43_n = 8, l43_R = 0, l43_r = 4, l43_t = 2, l43_trees = 0;
  l43->add_option("--n", l43_n)->check(CLI::PositiveNumber)->capture_default_str();
  l43->add_option("--R", l43_R, "Value range (default: n)");
  l43->add_option("--r", l43_r, "Tree depth")->capture_default_str();
  l43->add_option("--t", l43_t)->capture_default_str();
  l43->add_option("--trees", l43_trees, "Extra random trees")->check(CLI::NonNegativeNumber);
  l43->callback([&] {
    const int R = l43_R ? l43_R : l43_n;
    h::Table t{h::kLemma43Header, {}};
    for (int s : powers_of_two_up_to(2 * l43_n)) {
      t.rows.push_back(h::lemma43_row(l43_n, R, l43_r, l43_t, "multipass-s" + std::to_string(s), g.seed, g.cap_tree));
    }
    for (int k = 0; k <= l43_t + 1; ++k) {
      t.rows.push_back(h::lemma43_row(l43_n, R, l43_r, l43_t, "guess-k" + std::to_string(k), g.seed, g.cap_tree));
    }
    for (int k = 0; k < l43_trees; ++k) {
      t.rows.push_back(h::lemma43_row(l43_n, R, l43_r, l43_t, "random", memlab::split_seed(g.seed, static_cast<std::uint64_t>(k)),
                                      g.cap_tree));
    }
    rc = emit(g, t);
  });

  // unique-pairs ------------------------------------------------------------
  auto* up = app.add_subcommand("unique-pairs", "Expected number of unique pairs: formulas, enumeration, Monte Carlo");
  std::vector<int> up_n{2, 10, 100};
  std::int64_t up_trials = 100000;
  up->add_option("--n", up_n)->delimiter(',')->capture_default_str();
  up->add_option("--trials", up_trials)->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40))
      ->capture_default_str();
  up->callback([&] {
    h::Table t{h::kUniquePairsHeader, {}};
    std::uint64_t cell = 0;
    for (int n : up_n) {
      t.rows.push_back(h::unique_pairs_row(n, up_trials, memlab::split_seed(g.seed, cell++), g.jobs, g.cap_enum));
    }
    rc = emit(g, t);
  });

  // report ------------------------------------------------------------------
  auto* rep = app.add_subcommand("report", "Summarise CSV files; nonzero exit if any row failed");
  std::vector<std::string> rep_files;
  rep->add_option("files", rep_files, "CSV files written by the other subcommands");
  rep->callback([&] {
    const auto r = h::report(rep_files);
    std::cout << r.summary;
    if (!g.out.empty()) {
      Sink sink(g.out);
      h::write_csv(sink.stream(), r.tidy);
    }
    rc = r.failures ? 1 : 0;
  });

  // replay ------------------------------------------------------------------
  auto* rp = app.add_subcommand("replay", "Regenerate one CSV row from its recorded fields and compare");
  std::string rp_from;
  int rp_line = 0;
  rp->add_option("--from", rp_from, "CSV file")->required()->check(CLI::ExistingFile);
  rp->add_option("--line", rp_line, "File line of the row (the header is line 1)")->required();
  rp->callback([&] {
    const auto r = h::replay(rp_from, rp_line, g.jobs, g.cap_enum, g.cap_tree);
    std::cout << "recorded:    " << r.original << '\n' << "regenerated: " << r.regenerated << '\n'
              << (r.identical ? "identical" : "DIFFERENT") << '\n';
    rc = r.identical ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "memlab: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
